#pragma once

#include <string>
#include <vector>

#include "acshift/oracle/evolve.hpp"
#include "acshift/oracle/harmonic_balance.hpp"
#include "acshift/steady_state.hpp"

namespace acshift::oracle {

/// One analytic-vs-oracle comparison.
struct CheckRow {
    std::string label;
    double parameter = 0.0;  ///< the scanned value, in the report's parameter unit
    double analytic = 0.0;
    double oracle = 0.0;
    double deviation = 0.0;  ///< as defined by the check (absolute or relative)
    double bound = 0.0;      ///< per-row tolerance when the check has one, else 0
};

struct CheckReport {
    std::string check;
    std::string parameter_name;  ///< e.g. "energy_bias_ghz"
    std::string quantity;        ///< what analytic/oracle hold
    std::string deviation_kind;  ///< "absolute" or "relative"
    std::vector<CheckRow> rows;

    double max_deviation() const;
    /// Every row within its bound (rows with bound 0 are not checked).
    bool within_bounds() const;
};

/// Period-averaged <sigma_z> of the drive-only qubit from Lindblad time
/// evolution vs the off-resonant population formula. One row per point; the
/// spectroscopy and probe tones are ignored.
CheckReport population_check(const std::vector<OperatingPoint>& points,
                             const IntegratorConfig& cfg = {});

/// Floquet splitting vs omega_q + omega_ac at each drive amplitude
/// (relative error of the shift, bounded by (bar_drive / delta_-)^2).
CheckReport shift_check(const OperatingPoint& base, const std::vector<Frequency>& drive_amplitudes);

/// Decay rate of the period-averaged <sigma_z> after starting in the excited
/// state, fitted over [4, 8]/Gamma_r, vs Gamma_r_hat + Gamma_e_hat. Rates in MHz.
struct RelaxationFit {
    double fitted_mhz = 0.0;
    double predicted_mhz = 0.0;    ///< renormalized rates
    double unmodified_mhz = 0.0;   ///< Gamma_r
    double stationary = 0.0;       ///< <sigma_z> the transient relaxes to
};
RelaxationFit relaxation_fit(const OperatingPoint& point);
CheckReport rates_check(const std::vector<OperatingPoint>& points);

/// |t| from the steady-state module vs the master-equation transmission
/// oracle across the given probe frequencies (absolute deviation of |t|).
CheckReport transmission_check(const OperatingPoint& point, const std::vector<Frequency>& probe_scan,
                               int fock_dim = 6, bool rotating_wave_coupling = false);

/// Probe frequencies omega_r + k * kappa for k in [-span, span].
std::vector<Frequency> probe_scan_around_resonance(const ResonatorParams& r, int span = 4);

}  // namespace acshift::oracle
