#pragma once

#include "acshift/units.hpp"

namespace acshift::oracle {

/// H(t) = (omega_q/2) sigma_z + bar_drive cos(omega_d t) sigma_x.
struct FloquetProblem {
    Frequency wq;
    Frequency wd;
    Frequency bar_drive;
    int harmonic_cutoff = 12;  ///< Floquet blocks on each side of n = 0

    void validate() const;
};

struct FloquetResult {
    Frequency splitting;
    /// |splitting(cutoff) - splitting(cutoff + 2)| in GHz.
    double convergence = 0.0;
};

/// Quasi-energy splitting on the branch continuously connected to omega_q at
/// zero drive. Throws ZoneAmbiguity when the branch cannot be followed
/// (near-resonant drive or an avoided crossing along the path).
FloquetResult floquet_quasienergies(const FloquetProblem& p);

}  // namespace acshift::oracle
