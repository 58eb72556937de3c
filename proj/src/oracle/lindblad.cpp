#include "acshift/oracle/lindblad.hpp"

#include <cmath>
#include <string>

#include "acshift/errors.hpp"

namespace acshift::oracle {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix annihilation(int n) {
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

}  // namespace

PeriodicGenerator::PeriodicGenerator(Matrix h_static, std::vector<HarmonicTerm> harmonics,
                                     std::vector<JumpOperator> jumps)
    : h_static_(std::move(h_static)), harmonics_(std::move(harmonics)), jumps_(std::move(jumps)) {
    const auto n = h_static_.rows();
    if (h_static_.cols() != n) throw InvalidParameter("Hamiltonian must be square");
    for (const auto& h : harmonics_)
        if (h.op.rows() != n || h.op.cols() != n)
            throw InvalidParameter("harmonic term dimension mismatch");
    decay_ = Matrix::Zero(n, n);
    for (const auto& j : jumps_) {
        if (j.op.rows() != n || j.op.cols() != n)
            throw InvalidParameter("jump operator dimension mismatch");
        if (j.rate < 0) throw InvalidParameter("jump rate must be non-negative");
        decay_ += 0.5 * j.rate * j.op.adjoint() * j.op;
    }
}

Matrix PeriodicGenerator::hamiltonian(double t) const {
    Matrix h = h_static_;
    for (const auto& term : harmonics_) {
        const cd phase = std::polar(1.0, -term.frequency * t);
        h += phase * term.op;
        h += std::conj(phase) * term.op.adjoint();
    }
    return h;
}

void PeriodicGenerator::apply(double t, const Eigen::Ref<const Matrix>& rho,
                              Eigen::Ref<Matrix> out) const {
    if (rho.rows() != dim() || rho.cols() != dim())
        throw InvalidParameter("density matrix is " + std::to_string(rho.rows()) + "x" +
                               std::to_string(rho.cols()) + ", generator acts on dimension " +
                               std::to_string(dim()));
    // H_eff = H - i decay;  d rho = -i (H_eff rho - rho H_eff^dag) + sum L rho L^dag
    Matrix h_eff = hamiltonian(t);
    h_eff -= cd(0.0, 1.0) * decay_;
    out.noalias() = cd(0.0, -1.0) * (h_eff * rho);
    out.noalias() += cd(0.0, 1.0) * (rho * h_eff.adjoint());
    for (const auto& j : jumps_) {
        if (j.rate == 0.0) continue;
        out.noalias() += j.rate * (j.op * rho * j.op.adjoint());
    }
}

double TruncatedSystem::probe_component_frequency() const {
    return frame == CavityFrame::lab ? probe.frequency.angular() : 0.0;
}

cd TruncatedSystem::displacement() const {
    if (!with_cavity || !displaced) return {};
    if (frame_field) return *frame_field;
    const double delta = cavity_frequency.angular() - probe.frequency.angular();
    return -probe.amplitude.angular() / cd(delta, -kappa.angular() / 2.0);
}

void TruncatedSystem::validate() const {
    if (with_cavity && fock_dim < 2) throw InvalidParameter("fock_dim must be at least 2");
    if (!(qubit_splitting > Frequency{})) throw InvalidParameter("qubit splitting must be positive");
    rates.validate();
    if (with_cavity && kappa < Rate{}) throw InvalidParameter("kappa must be non-negative");
}

TruncatedSystem TruncatedSystem::from_operating_point(const OperatingPoint& op, int fock_dim) {
    op.validate();
    TruncatedSystem sys;
    sys.fock_dim = fock_dim;
    sys.qubit_splitting = level_splitting(op.qubit, op.bias);
    sys.projection = projections(op.qubit, op.bias);
    sys.cavity_frequency = op.resonator.fundamental;
    sys.coupling = op.resonator.coupling;
    sys.kappa = op.resonator.kappa();
    sys.probe = {op.probe_amplitude(), op.tones.probe.frequency, ToneRole::probe};
    sys.rates = op.rates;
    if (op.tones.drive.amplitude > Frequency{})
        sys.qubit_tones.push_back({op.tones.drive.amplitude, op.tones.drive.frequency, ToneRole::drive});
    if (op.tones.spectroscopy.amplitude > Frequency{})
        sys.qubit_tones.push_back({op.tones.spectroscopy.amplitude, op.tones.spectroscopy.frequency,
                                   ToneRole::spectroscopy});
    return sys;
}

TruncatedSystem TruncatedSystem::driven_qubit(Frequency wq, Projections projection,
                                              std::vector<ClassicalTone> tones,
                                              const DissipationRates& rates) {
    TruncatedSystem sys;
    sys.with_cavity = false;
    sys.qubit_splitting = wq;
    sys.projection = projection;
    sys.rates = rates;
    sys.qubit_tones = std::move(tones);
    return sys;
}

Operators operators(const TruncatedSystem& sys) {
    const int nf = sys.with_cavity ? sys.fock_dim : 1;
    const Matrix id_f = Matrix::Identity(nf, nf);
    Matrix sz(2, 2), sx(2, 2), sp(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    sp << 0, 1, 0, 0;  // |e><g| with e first
    Operators o;
    o.sigma_z = kron(sz, id_f);
    o.sigma_x = kron(sx, id_f);
    o.sigma_plus = kron(sp, id_f);
    o.sigma_minus = o.sigma_plus.adjoint();
    o.a = kron(Matrix::Identity(2, 2), sys.with_cavity ? annihilation(nf) : Matrix::Zero(1, 1));
    o.number = o.a.adjoint() * o.a;
    o.identity = Matrix::Identity(2 * nf, 2 * nf);
    return o;
}

PeriodicGenerator build_generator(const TruncatedSystem& sys) {
    sys.validate();
    const Operators o = operators(sys);
    const Matrix coupling_op = sys.projection.check * o.sigma_z + sys.projection.bar * o.sigma_x;

    Matrix h = 0.5 * sys.qubit_splitting.angular() * o.sigma_z;
    std::vector<HarmonicTerm> harmonics;
    for (const auto& tone : sys.qubit_tones)
        harmonics.push_back({tone.frequency.angular(), 0.5 * tone.amplitude.angular() * coupling_op});

    std::vector<JumpOperator> jumps{{sys.rates.relaxation.angular(), o.sigma_minus},
                                    {0.5 * sys.rates.pure_dephasing.angular(), o.sigma_z}};

    if (sys.with_cavity) {
        const double g = sys.coupling.angular();
        const double wp = sys.probe.frequency.angular();
        const double op_amp = sys.probe.amplitude.angular();
        const cd alpha = sys.displacement();
        // Linear drive left over after displacing by alpha.
        const cd residual = alpha * cd(sys.cavity_frequency.angular() - wp, -sys.kappa.angular() / 2.0) + op_amp;
        const Matrix residual_drive = residual * o.a.adjoint();
        // Qubit operator multiplying a; its adjoint multiplies a^dag.
        const Matrix partner = sys.rotating_wave_coupling ? Matrix(sys.projection.bar * o.sigma_plus)
                                                          : coupling_op;
        const Matrix mode_coupling = g * o.a * partner;      // times e^{-i wp t} when rotating
        const Matrix field_coupling = g * alpha * partner;   // classical part of the displaced field
        if (sys.frame == CavityFrame::probe_rotating) {
            h += (sys.cavity_frequency.angular() - wp) * o.number;
            if (!sys.displaced)
                h += op_amp * (o.a + o.a.adjoint());
            else if (std::abs(residual) > 0.0)
                h += residual_drive + residual_drive.adjoint();
            harmonics.push_back({wp, mode_coupling + field_coupling});
        } else {
            h += sys.cavity_frequency.angular() * o.number;
            h += g * o.a * partner;
            h += (g * o.a * partner).adjoint();
            if (sys.displaced) {
                harmonics.push_back({wp, field_coupling});
                if (std::abs(residual) > 0.0) harmonics.push_back({wp, residual_drive});
            } else
                harmonics.push_back({wp, op_amp * o.a.adjoint()});
        }
        jumps.push_back({sys.kappa.angular(), o.a});
    }
    return PeriodicGenerator(std::move(h), std::move(harmonics), std::move(jumps));
}

Matrix basis_state(const TruncatedSystem& sys, bool excited, int photons) {
    const int nf = sys.with_cavity ? sys.fock_dim : 1;
    if (photons < 0 || photons >= nf) throw InvalidParameter("photon number outside truncation");
    Matrix rho = Matrix::Zero(2 * nf, 2 * nf);
    const int idx = (excited ? 0 : nf) + photons;
    rho(idx, idx) = 1.0;
    return rho;
}

cd lab_cavity_amplitude(const TruncatedSystem& sys, cd truncated_component) {
    return truncated_component + sys.displacement();
}

double top_fock_occupation(const TruncatedSystem& sys, const Matrix& rho) {
    if (!sys.with_cavity) return 0.0;
    const int nf = sys.fock_dim;
    return rho(nf - 1, nf - 1).real() + rho(2 * nf - 1, 2 * nf - 1).real();
}

}  // namespace acshift::oracle
