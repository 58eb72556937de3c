#pragma once

#include <vector>

#include "acshift/oracle/lindblad.hpp"

namespace acshift::oracle {

/// Periodic steady state in the frequency domain:
///   rho(t) = sum_k rho_k e^{-i (k . nu) t},
/// with k a multi-index over the distinct tone frequencies nu of the generator.
/// Time-domain integration is impractical when kappa is kHz-scale against
/// GHz tones; this solves the Fourier-coupled linear system directly.
struct HarmonicBalanceConfig {
    /// Keep multi-indices with sum_j |k_j| <= max_order.
    int max_order = 4;
};

class PeriodicSteadyState {
public:
    PeriodicSteadyState(std::vector<double> tones, std::vector<std::vector<int>> indices,
                        std::vector<Matrix> components, double residual);

    /// Coefficient of e^{-i frequency t} in <op>(t).
    cd fourier(const Matrix& op, double frequency) const;
    /// Time-averaged density matrix (all components with k . nu = 0).
    Matrix average() const;

    const std::vector<double>& tones() const { return tones_; }
    const std::vector<std::vector<int>>& indices() const { return indices_; }
    const std::vector<Matrix>& components() const { return components_; }
    /// Largest Frobenius norm among the outermost harmonic shell.
    double outer_shell_norm() const;
    /// Max-norm residual of the solved linear system.
    double residual() const { return residual_; }

private:
    double frequency_of(const std::vector<int>& k) const;

    std::vector<double> tones_;
    std::vector<std::vector<int>> indices_;
    std::vector<Matrix> components_;
    double residual_ = 0.0;
};

/// Throws InvalidParameter if there is no dissipation and ConvergenceError if
/// the sparse factorization fails.
PeriodicSteadyState periodic_steady_state(const PeriodicGenerator& gen,
                                          const HarmonicBalanceConfig& cfg = {});

}  // namespace acshift::oracle
