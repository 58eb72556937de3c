#include "acshift/oracle/harmonic_balance.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "acshift/errors.hpp"

namespace acshift::oracle {

namespace {

using Sparse = Eigen::SparseMatrix<cd>;
using Triplets = std::vector<Eigen::Triplet<cd>>;

Sparse to_sparse(const Matrix& m) {
    return m.sparseView(1.0, 1e-300);
}

Sparse kron(const Sparse& a, const Sparse& b) {
    Triplets t;
    t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (Sparse::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (Sparse::InnerIterator ib(b, kb); ib; ++ib)
                    t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                   ia.value() * ib.value());
    Sparse out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

// Column-major vectorization: vec(A X B) = (B^T kron A) vec(X).
Sparse commutator_super(const Matrix& h) {
    const auto d = h.rows();
    Sparse id(d, d);
    id.setIdentity();
    const Sparse hs = to_sparse(h);
    const Sparse ht = to_sparse(h.transpose());
    return cd(0.0, -1.0) * (kron(id, hs) - kron(ht, id));
}

Sparse dissipator_super(const std::vector<JumpOperator>& jumps, Eigen::Index d) {
    Sparse id(d, d);
    id.setIdentity();
    Sparse out(d * d, d * d);
    for (const auto& j : jumps) {
        if (j.rate == 0.0) continue;
        const Matrix ldl = j.op.adjoint() * j.op;
        out += j.rate * (kron(to_sparse(j.op.conjugate()), to_sparse(j.op)) -
                         0.5 * kron(id, to_sparse(ldl)) - 0.5 * kron(to_sparse(ldl.transpose()), id));
    }
    return out;
}

std::vector<std::vector<int>> multi_indices(std::size_t tones, int max_order) {
    std::vector<std::vector<int>> out{std::vector<int>(tones, 0)};
    if (tones == 0) return out;
    // Breadth-first growth keeps lower orders first.
    std::map<std::vector<int>, bool> seen{{out.front(), true}};
    for (std::size_t head = 0; head < out.size(); ++head) {
        const auto k = out[head];
        int order = 0;
        for (int v : k) order += std::abs(v);
        if (order == max_order) continue;
        for (std::size_t j = 0; j < tones; ++j)
            for (int s : {1, -1}) {
                auto n = k;
                n[j] += s;
                if (seen.emplace(n, true).second) out.push_back(std::move(n));
            }
    }
    return out;
}

bool near(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

PeriodicSteadyState::PeriodicSteadyState(std::vector<double> tones,
                                         std::vector<std::vector<int>> indices,
                                         std::vector<Matrix> components, double residual)
    : tones_(std::move(tones)),
      indices_(std::move(indices)),
      components_(std::move(components)),
      residual_(residual) {}

double PeriodicSteadyState::frequency_of(const std::vector<int>& k) const {
    double f = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) f += k[j] * tones_[j];
    return f;
}

cd PeriodicSteadyState::fourier(const Matrix& op, double frequency) const {
    cd sum{};
    for (std::size_t i = 0; i < indices_.size(); ++i)
        if (near(frequency_of(indices_[i]), frequency))
            sum += (op.cwiseProduct(components_[i].transpose())).sum();
    return sum;
}

Matrix PeriodicSteadyState::average() const {
    Matrix avg = Matrix::Zero(components_.front().rows(), components_.front().cols());
    for (std::size_t i = 0; i < indices_.size(); ++i)
        if (near(frequency_of(indices_[i]), 0.0)) avg += components_[i];
    return avg;
}

double PeriodicSteadyState::outer_shell_norm() const {
    int top = 0;
    auto order = [](const std::vector<int>& k) {
        return std::accumulate(k.begin(), k.end(), 0, [](int a, int v) { return a + std::abs(v); });
    };
    for (const auto& k : indices_) top = std::max(top, order(k));
    double norm = 0.0;
    for (std::size_t i = 0; i < indices_.size(); ++i)
        if (order(indices_[i]) == top && top > 0) norm = std::max(norm, components_[i].norm());
    return norm;
}

PeriodicSteadyState periodic_steady_state(const PeriodicGenerator& gen,
                                          const HarmonicBalanceConfig& cfg) {
    if (cfg.max_order < 0) throw InvalidParameter("harmonic order must be non-negative");
    bool dissipative = false;
    for (const auto& j : gen.jumps()) dissipative = dissipative || j.rate > 0.0;
    if (!dissipative) throw InvalidParameter("periodic steady state requires dissipation");

    const Eigen::Index d = gen.dim();
    const Eigen::Index block = d * d;

    // Tone table: distinct |frequency|; each harmonic couples k -> k + sign e_j.
    std::vector<double> tones;
    struct Coupling {
        std::size_t tone;
        int sign;
        Sparse forward;   // from rho_{k - sign e_j}: -i [V, .]
        Sparse backward;  // from rho_{k + sign e_j}: -i [V^dag, .]
    };
    std::vector<Coupling> couplings;
    for (const auto& h : gen.harmonics()) {
        if (h.frequency == 0.0) throw InvalidParameter("harmonic terms must have non-zero frequency");
        const double f = std::abs(h.frequency);
        std::size_t j = 0;
        while (j < tones.size() && !near(tones[j], f)) ++j;
        if (j == tones.size()) tones.push_back(f);
        couplings.push_back({j, h.frequency > 0 ? 1 : -1, commutator_super(h.op),
                             commutator_super(h.op.adjoint())});
    }

    const auto indices = multi_indices(tones.size(), tones.empty() ? 0 : cfg.max_order);
    std::map<std::vector<int>, Eigen::Index> position;
    for (std::size_t i = 0; i < indices.size(); ++i) position[indices[i]] = static_cast<Eigen::Index>(i);

    const Sparse l0 = commutator_super(gen.static_hamiltonian()) + dissipator_super(gen.jumps(), d);

    const Eigen::Index n = block * static_cast<Eigen::Index>(indices.size());
    Triplets t;
    t.reserve(static_cast<std::size_t>((l0.nonZeros() + 2 * d) * indices.size() * (1 + couplings.size())));
    auto add_block = [&](Eigen::Index row_block, Eigen::Index col_block, const Sparse& m) {
        for (int c = 0; c < m.outerSize(); ++c)
            for (Sparse::InnerIterator it(m, c); it; ++it) {
                if (it.row() == 0) continue;  // replaced by the trace condition
                t.emplace_back(row_block * block + it.row(), col_block * block + it.col(), it.value());
            }
    };

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto& k = indices[i];
        const auto bi = static_cast<Eigen::Index>(i);
        double kn = 0.0;
        for (std::size_t j = 0; j < k.size(); ++j) kn += k[j] * tones[j];
        // -i (k.nu) rho_k = L0 rho_k + couplings  =>  (L0 + i k.nu) rho_k + ... = 0
        add_block(bi, bi, l0);
        for (Eigen::Index r = 1; r < block; ++r) t.emplace_back(bi * block + r, bi * block + r, cd(0.0, kn));
        for (const auto& c : couplings) {
            auto from = k;
            from[c.tone] -= c.sign;
            if (auto it = position.find(from); it != position.end()) add_block(bi, it->second, c.forward);
            from = k;
            from[c.tone] += c.sign;
            if (auto it = position.find(from); it != position.end()) add_block(bi, it->second, c.backward);
        }
        // Row 0 of each block: tr rho_k = delta_{k0}.
        for (Eigen::Index q = 0; q < d; ++q) t.emplace_back(bi * block, bi * block + q * d + q, 1.0);
        if (i == 0) rhs(0) = 1.0;
    }

    Sparse a(n, n);
    a.setFromTriplets(t.begin(), t.end());
    a.makeCompressed();
    Eigen::SparseLU<Sparse, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw ConvergenceError("harmonic-balance factorization failed: " + lu.lastErrorMessage());
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw ConvergenceError("harmonic-balance solve failed");
    const double residual = (a * x - rhs).cwiseAbs().maxCoeff();

    std::vector<Matrix> components;
    components.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        components.emplace_back(
            Eigen::Map<const Matrix>(x.data() + static_cast<Eigen::Index>(i) * block, d, d));
    return PeriodicSteadyState(std::move(tones), indices, std::move(components), residual);
}

}  // namespace acshift::oracle
