#include "acshift/oracle/floquet.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "acshift/errors.hpp"

namespace acshift::oracle {

namespace {

constexpr double kMinOverlap = 0.5;
constexpr int kMinSteps = 16;
constexpr double kMaxStepRatio = 0.02;  // drive increment relative to |delta_-|

// Basis: block n (from -cutoff) holds (e, g).
Eigen::MatrixXd floquet_matrix(double wq, double wd, double drive, int cutoff) {
    const int blocks = 2 * cutoff + 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * blocks, 2 * blocks);
    for (int b = 0; b < blocks; ++b) {
        const double n = b - cutoff;
        m(2 * b, 2 * b) = wq / 2.0 + n * wd;
        m(2 * b + 1, 2 * b + 1) = -wq / 2.0 + n * wd;
        if (b + 1 < blocks) {
            // sigma_x between neighbouring blocks, weight drive/2
            m(2 * b, 2 * (b + 1) + 1) = m(2 * (b + 1) + 1, 2 * b) = drive / 2.0;
            m(2 * b + 1, 2 * (b + 1)) = m(2 * (b + 1), 2 * b + 1) = drive / 2.0;
        }
    }
    return m;
}

double tracked_splitting(double wq, double wd, double drive, int cutoff) {
    const int dim = 2 * (2 * cutoff + 1);
    Eigen::VectorXd ve = Eigen::VectorXd::Unit(dim, 2 * cutoff);
    Eigen::VectorXd vg = Eigen::VectorXd::Unit(dim, 2 * cutoff + 1);
    double ee = wq / 2.0;
    double eg = -wq / 2.0;
    if (drive == 0.0) return ee - eg;

    const double detuning = std::abs(wq - wd);
    const int steps = std::max(kMinSteps, static_cast<int>(std::ceil(std::abs(drive) / (kMaxStepRatio * detuning))));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    for (int s = 1; s <= steps; ++s) {
        solver.compute(floquet_matrix(wq, wd, drive * s / steps, cutoff));
        const Eigen::MatrixXd& vecs = solver.eigenvectors();
        auto follow = [&](Eigen::VectorXd& v, double& e) {
            const Eigen::VectorXd overlaps = (vecs.transpose() * v).cwiseAbs2();
            Eigen::Index best = 0;
            const double o = overlaps.maxCoeff(&best);
            if (o < kMinOverlap)
                throw ZoneAmbiguity("Floquet branch lost at drive " +
                                    std::to_string(drive * s / steps / two_pi) +
                                    " GHz (overlap " + std::to_string(o) + ")");
            v = vecs.col(best);
            e = solver.eigenvalues()(best);
        };
        follow(ve, ee);
        follow(vg, eg);
    }
    return ee - eg;
}

}  // namespace

void FloquetProblem::validate() const {
    if (!(wq > Frequency{})) throw InvalidParameter("qubit splitting must be positive");
    if (!(wd > Frequency{})) throw InvalidParameter("drive frequency must be positive");
    if (harmonic_cutoff < 3) throw InvalidParameter("harmonic cutoff must be at least 3");
}

FloquetResult floquet_quasienergies(const FloquetProblem& p) {
    p.validate();
    const double wq = p.wq.angular();
    const double wd = p.wd.angular();
    const double drive = p.bar_drive.angular();
    if (std::abs(wq - wd) <= std::abs(drive))
        throw ZoneAmbiguity("drive within its own amplitude of resonance; no perturbative branch");
    const double s = tracked_splitting(wq, wd, drive, p.harmonic_cutoff);
    const double s2 = tracked_splitting(wq, wd, drive, p.harmonic_cutoff + 2);
    return {Frequency::angular(s), std::abs(s - s2) / two_pi};
}

}  // namespace acshift::oracle
