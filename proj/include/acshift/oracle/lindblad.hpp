#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "acshift/qubit.hpp"
#include "acshift/steady_state.hpp"

namespace acshift::oracle {

using Matrix = Eigen::MatrixXcd;
using cd = std::complex<double>;

/// op * e^{-i frequency t} + h.c.
struct HarmonicTerm {
    double frequency = 0.0;  // rad/ns
    Matrix op;
};

/// rate * (L rho L^dag - {L^dag L, rho}/2)
struct JumpOperator {
    double rate = 0.0;
    Matrix op;
};

/// Lindblad generator whose Hamiltonian is a finite sum of harmonics:
///   H(t) = H_static + sum_j (V_j e^{-i nu_j t} + V_j^dag e^{i nu_j t}).
class PeriodicGenerator {
public:
    PeriodicGenerator(Matrix h_static, std::vector<HarmonicTerm> harmonics,
                      std::vector<JumpOperator> jumps);

    int dim() const { return static_cast<int>(h_static_.rows()); }
    const Matrix& static_hamiltonian() const { return h_static_; }
    const std::vector<HarmonicTerm>& harmonics() const { return harmonics_; }
    const std::vector<JumpOperator>& jumps() const { return jumps_; }

    Matrix hamiltonian(double t) const;

    /// out = L(t) rho. Throws InvalidParameter on a dimension mismatch.
    void apply(double t, const Eigen::Ref<const Matrix>& rho, Eigen::Ref<Matrix> out) const;

private:
    Matrix h_static_;
    std::vector<HarmonicTerm> harmonics_;
    std::vector<JumpOperator> jumps_;
    Matrix decay_;  // sum_k rate_k L_k^dag L_k / 2
};

enum class CavityFrame {
    lab,
    probe_rotating,  ///< cavity operators rotate at omega_p; the qubit stays in the lab frame
};

/// Classical qubit drive Omega cos(omega t) (check sigma_z + bar sigma_x).
struct ClassicalTone {
    Frequency amplitude;
    Frequency frequency;
    ToneRole role = ToneRole::drive;
};

/// Qubit (eigenbasis) coupled to a truncated cavity mode, with all tones of the
/// full three-tone Hamiltonian and qubit/cavity Lindblad dissipation.
///
/// Basis ordering is qubit (excited, ground) outer, Fock inner.
struct TruncatedSystem {
    int fock_dim = 12;
    bool with_cavity = true;

    Frequency qubit_splitting;
    Projections projection;

    Frequency cavity_frequency;
    Frequency coupling;
    Rate kappa;
    Tone probe{{}, {}, ToneRole::probe};

    DissipationRates rates;
    std::vector<ClassicalTone> qubit_tones;

    CavityFrame frame = CavityFrame::probe_rotating;
    /// Work in the frame displaced by the bare-cavity coherent field; the
    /// truncated mode then only carries the qubit-induced part of the field.
    bool displaced = true;
    /// Displacement used when `displaced`; defaults to the bare-cavity field.
    /// Any value gives the same physics: the leftover linear drive
    /// alpha (delta_rp - i kappa/2) + Omega_p is added to the generator.
    std::optional<cd> frame_field;
    /// Keep only the co-rotating part bar g (a sigma_+ + a^dag sigma_-) of the
    /// qubit-cavity coupling (diagnostic; the default is the full coupling).
    bool rotating_wave_coupling = false;

    int dim() const { return with_cavity ? 2 * fock_dim : 2; }

    /// Frequency (rad/ns) at which the truncated-mode amplitude <b> carries the
    /// probe response in this frame: 0 when rotating, omega_p in the lab frame.
    double probe_component_frequency() const;

    /// Frame displacement: frame_field, else the bare-cavity amplitude
    /// -Omega_p / (delta_rp - i kappa/2); zero if not displaced.
    cd displacement() const;

    void validate() const;

    static TruncatedSystem from_operating_point(const OperatingPoint& op, int fock_dim = 12);

    /// A single qubit (no cavity) driven by the given tones.
    static TruncatedSystem driven_qubit(Frequency wq, Projections projection,
                                        std::vector<ClassicalTone> tones,
                                        const DissipationRates& rates);
};

struct Operators {
    Matrix sigma_z, sigma_x, sigma_plus, sigma_minus, a, number, identity;
};

Operators operators(const TruncatedSystem& sys);

PeriodicGenerator build_generator(const TruncatedSystem& sys);

/// Density matrix with the qubit in its ground (or excited) state and the cavity empty.
Matrix basis_state(const TruncatedSystem& sys, bool excited, int photons = 0);

/// Lab-frame Fourier component at e^{-i omega_p t} of <a>, given the frame's
/// component of <b> (the truncated-mode operator) at the matching frequency.
cd lab_cavity_amplitude(const TruncatedSystem& sys, cd truncated_component);

/// Population of the highest Fock level.
double top_fock_occupation(const TruncatedSystem& sys, const Matrix& rho);

}  // namespace acshift::oracle
