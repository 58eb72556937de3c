#pragma once

#include <complex>

#include "acshift/qubit.hpp"

namespace acshift {

/// delta_minus = omega_q - omega_d (rotating frame), delta_plus = omega_q + omega_d.
struct Detunings {
    Frequency minus;
    Frequency plus;
};

Detunings detunings(Frequency wq, Frequency wd);

/// Fourier amplitudes of <sigma_+>(t) = s_plus e^{-i wd t} + s_minus e^{+i wd t}.
struct SidebandAmplitudes {
    std::complex<double> plus;
    std::complex<double> minus;
};

struct ModifiedRates {
    Rate relaxation_hat;
    Rate excitation_hat;
    Rate dephasing_hat;
    Rate decoherence_hat;   ///< (relaxation_hat + excitation_hat)/2 + dephasing_hat
};

struct ShiftResult {
    Frequency omega_ac;
    Frequency rabi_splitting;   ///< Omega_R, the shifted level splitting
    double alpha = 0.0;         ///< renormalized diagonal coupling factor
    double beta = 1.0;          ///< renormalized transverse coupling factor
    double a_factor = 1.0;
    double b_factor = 1.0;
    double c_factor = 0.0;      ///< mixing parameter C

    Frequency bar_drive;        ///< (Delta/omega_q) Omega_d at this bias
    Frequency splitting;        ///< bare omega_q
    Detunings detuning;

    /// bar_drive / |delta_minus|; the expansion degrades above 0.3.
    double expansion_ratio = 0.0;
    bool within_validity() const { return expansion_ratio <= max_expansion_ratio; }

    static constexpr double max_expansion_ratio = 0.3;
};

/// Effective transverse drive (Delta/omega_q) * Omega_d at the given bias.
Frequency effective_drive(const QubitParams& q, const FluxBias& b, Frequency drive_amplitude);

/// Driven-qubit sidebands for a fixed population sz.
/// Throws DegenerateDenominator when a detuning and gamma_phi both vanish.
SidebandAmplitudes sideband_amplitudes(Frequency bar_drive, Frequency wq, Frequency wd,
                                       Rate gamma_phi, double sz);

/// Period-averaged <sigma_z> of the off-resonantly driven qubit.
double offres_population(Frequency bar_drive, Frequency wq, Frequency wd,
                         const DissipationRates& rates);

/// Level shift including the linewidth of both rotating-frame resonances.
Frequency ac_shift_exact(Frequency bar_drive, Frequency wq, Frequency wd, Rate gamma_phi);

/// omega_ac = bar_drive^2 omega_q / (omega_q^2 - omega_d^2).
/// Throws DegenerateDenominator at omega_q == omega_d.
Frequency ac_shift_approx(Frequency bar_drive, Frequency wq, Frequency wd);

/// Omega_R = sqrt((omega_q + omega_ac)^2 + (2 eps omega_ac / Delta)^2).
Frequency rabi_splitting(const QubitParams& q, const FluxBias& b, Frequency omega_ac);

/// C = bar_drive^2 (1/delta_minus^2 + 1/delta_plus^2).
double mixing_parameter(Frequency bar_drive, const Detunings& d);

struct CouplingFactors {
    double alpha = 0.0;
    double beta = 1.0;
    double a_factor = 1.0;
    double b_factor = 1.0;
};

CouplingFactors coupling_factors(const QubitParams& q, const FluxBias& b, const Tone& drive);

/// Dissipation rates renormalized by the drive-induced state mixing.
/// Throws NegativeRate if any resulting rate is negative.
ModifiedRates modified_rates(const DissipationRates& rates, Frequency bar_drive, const Detunings& d);

/// Rates of the undriven qubit expressed as ModifiedRates (C = 0).
ModifiedRates unmodified_rates(const DissipationRates& rates);

/// All closed-form drive consequences at one operating point.
ShiftResult compute_shift(const QubitParams& q, const FluxBias& b, const Tone& drive);

}  // namespace acshift
