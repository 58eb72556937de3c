#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acshift/oracle/lindblad.hpp"

namespace acshift::oracle {

struct IntegratorConfig {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-12;
    /// Largest change of any averaged observable between successive windows.
    double convergence_tolerance = 1e-8;
    int min_windows = 3;
    int max_windows = 200000;
    int samples_per_fast_period = 64;
    /// Averaging window in ns; by default the common period of the tones, or
    /// `incommensurate_periods` periods of the probe (slowest tone without one).
    std::optional<double> window;
    int incommensurate_periods = 200;
};

/// Fourier component avg_t <op>(t) e^{+i frequency t}, i.e. the coefficient of
/// e^{-i frequency t} in <op>(t).
struct ObservableRequest {
    std::string name;
    Matrix op;
    double frequency = 0.0;
};

struct Window {
    double duration = 0.0;
    int samples = 0;
    bool commensurate = true;  ///< false: Hann-weighted average over an approximate window
};

Window averaging_window(const PeriodicGenerator& gen, const IntegratorConfig& cfg);

/// sigma_z; sigma_plus at 0 and at +-omega for every tone; and for a cavity
/// system the truncated-mode amplitude at the probe component (see `lab_cavity_amplitude`).
std::vector<ObservableRequest> standard_observables(const TruncatedSystem& sys);

struct WindowAverage {
    double start = 0.0;
    Matrix mean_state;
    std::map<std::string, cd> values;
};

/// Owns a density matrix and advances it with an adaptive Dormand-Prince 5(4)
/// dense-output stepper.
class Evolution {
public:
    Evolution(PeriodicGenerator gen, Matrix rho0, IntegratorConfig cfg = {});

    /// Integrates over one window, returning the window-averaged state and observables.
    WindowAverage advance(const Window& window, const std::vector<ObservableRequest>& requests);

    double time() const { return t_; }
    Matrix state() const;
    /// max |tr rho - 1| over every sample seen so far.
    double trace_drift() const { return trace_drift_; }
    double hermiticity_error() const { return hermiticity_error_; }

private:
    PeriodicGenerator gen_;
    IntegratorConfig cfg_;
    std::vector<cd> x_;
    double t_ = 0.0;
    double dt_ = 1e-3;
    double trace_drift_ = 0.0;
    double hermiticity_error_ = 0.0;
};

struct EvolutionResult {
    Matrix steady_density_matrix;  ///< window-averaged state of the last window
    std::map<std::string, cd> period_averaged_expectations;
    double trace_drift = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    double top_fock_occupation = 0.0;
    double final_time = 0.0;
    int windows = 0;
    Window window;
};

/// Integrates from `initial` (default: ground state, empty cavity) until the
/// window-averaged observables stop changing. Throws ConvergenceError after
/// `max_windows` windows.
EvolutionResult evolve_to_steady(const TruncatedSystem& sys, const IntegratorConfig& cfg = {},
                                 std::optional<Matrix> initial = std::nullopt);

}  // namespace acshift::oracle
