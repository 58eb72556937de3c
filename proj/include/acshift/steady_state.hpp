#pragma once

#include <complex>

#include "acshift/drive_shift.hpp"
#include "acshift/qubit.hpp"

namespace acshift {

enum class CorrectionOrder {
    first,   ///< keep omega_ac and Omega_R; coupling and rates at their undriven values
    second,  ///< renormalized coupling and dissipation included
};

enum class PhotonMode {
    fixed_n,          ///< the cavity photon number is a fixed parameter
    self_consistent,  ///< N = |<a>|^2 iterated to a fixed point
};

enum class ProbeSource {
    photon_number,  ///< Omega_p = kappa sqrt(N) / 2 (N photons at bare resonance)
    explicit_amplitude,
};

struct OperatingPoint {
    QubitParams qubit;
    FluxBias bias = EnergyBias{};
    ResonatorParams resonator;
    ToneSet tones;
    DissipationRates rates;
    double photon_number = 5.0;
    CorrectionOrder correction_order = CorrectionOrder::second;
    PhotonMode photon_mode = PhotonMode::fixed_n;
    ProbeSource probe_source = ProbeSource::photon_number;

    void validate() const;
    /// Cavity drive Omega_p after resolving probe_source.
    Frequency probe_amplitude() const;
    /// delta_rp = omega_r - omega_p.
    Frequency probe_detuning() const { return resonator.fundamental - tones.probe.frequency; }
};

/// Shift and rates as seen by the cavity and spectroscopy tone, after applying
/// the correction order.
struct EffectiveQubit {
    ShiftResult shift;
    ModifiedRates rates;
};

EffectiveQubit effective_qubit(const OperatingPoint& op);

struct SpectroscopySidebands {
    std::complex<double> probe;         ///< s_p
    std::complex<double> spectroscopy;  ///< s_s
};

struct SteadyState {
    std::complex<double> cavity_amplitude;
    double population = -1.0;
    std::complex<double> transmission;
    SpectroscopySidebands sidebands;
    double photon_number = 0.0;  ///< N used in the population equation
    int iterations = 0;          ///< fixed-point iterations (self-consistent mode)
};

SpectroscopySidebands spectroscopy_sidebands(const OperatingPoint& op, const ShiftResult& shift,
                                             const ModifiedRates& rates_hat, double sz,
                                             std::complex<double> a);

std::complex<double> cavity_amplitude(const OperatingPoint& op, const ShiftResult& shift,
                                      const ModifiedRates& rates_hat, double sz);

double qubit_population(const OperatingPoint& op, const ShiftResult& shift,
                        const ModifiedRates& rates_hat, double photon_number);

std::complex<double> transmission(const OperatingPoint& op, const ShiftResult& shift,
                                  const ModifiedRates& rates_hat, double sz);

SteadyState solve(const OperatingPoint& op);

}  // namespace acshift
