#pragma once

#include <vector>

#include "acshift/oracle/harmonic_balance.hpp"
#include "acshift/oracle/lindblad.hpp"

namespace acshift::oracle {

struct TransmissionOracleConfig {
    HarmonicBalanceConfig balance;
    double max_top_fock = 1e-4;
    /// The frame is re-displaced to the last computed field until the
    /// truncated mode's amplitude drops below `field_tolerance`.
    int max_reframes = 8;
    double field_tolerance = 1e-6;
};

struct TransmissionPoint {
    Frequency probe;
    cd transmission;
    cd cavity_amplitude;  ///< lab-frame <a> component at e^{-i omega_p t}
    double population = 0.0;
    double top_fock = 0.0;
};

/// t = -i kappa <a>_{omega_p} / (2 Omega_p): the normalization that gives
/// t = -1 on bare resonance, as in the analytic transmission.
cd oracle_transmission(const TruncatedSystem& sys, cd cavity_amplitude);

/// Single probe frequency (the one in `sys`). Throws TruncationError if the
/// top Fock level holds more than `max_top_fock`.
TransmissionPoint transmission_point(TruncatedSystem sys, const TransmissionOracleConfig& cfg = {});

std::vector<TransmissionPoint> transmission_oracle(const TruncatedSystem& sys,
                                                   const std::vector<Frequency>& probe_scan,
                                                   const TransmissionOracleConfig& cfg = {});

}  // namespace acshift::oracle
