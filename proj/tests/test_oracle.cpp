#include <doctest.h>

#include <cmath>

#include "acshift/errors.hpp"
#include "acshift/oracle/checks.hpp"
#include "acshift/oracle/evolve.hpp"
#include "acshift/oracle/floquet.hpp"
#include "acshift/oracle/harmonic_balance.hpp"
#include "acshift/oracle/transmission.hpp"
#include "support.hpp"

using namespace acshift;
using namespace acshift::oracle;
using namespace acshift::literals;
using doctest::Approx;

namespace {

const QubitParams kQubit{2.97_GHz, 160.0};
const Frequency kWd = 7.77_GHz;
const DissipationRates kRates{10_MHz, 20_MHz};

TruncatedSystem quiet_cavity(bool couple) {
    OperatingPoint op = testing::device_point();
    op.photon_number = 0.0;
    if (!couple) op.resonator.coupling = {};
    TruncatedSystem sys = TruncatedSystem::from_operating_point(op, 4);
    sys.rotating_wave_coupling = true;
    return sys;
}

double expect(const Matrix& op, const Matrix& rho) { return (op * rho).trace().real(); }

Matrix derivative(const TruncatedSystem& sys, const Matrix& rho) {
    Matrix out(rho.rows(), rho.cols());
    build_generator(sys).apply(0.0, rho, out);
    return out;
}

TruncatedSystem qubit_at_ratio(double eps_ghz, double ratio) {
    const FluxBias b = EnergyBias{Frequency::ghz(eps_ghz)};
    const Frequency wq = level_splitting(kQubit, b);
    const Projections p = projections(kQubit, b);
    const Frequency amp = abs(wq - kWd) * (ratio / p.bar);
    return TruncatedSystem::driven_qubit(wq, p, {{amp, kWd, ToneRole::drive}}, kRates);
}

}  // namespace

TEST_CASE("generator conventions") {
    // the ground state with an empty cavity is stationary
    const TruncatedSystem sys = quiet_cavity(true);
    CHECK(derivative(sys, basis_state(sys, false)).cwiseAbs().maxCoeff() < 1e-15);

    // <sigma_z> leaves +1 at rate 2 Gamma_r
    const Operators o = operators(sys);
    const double gr = kRates.relaxation.angular();
    CHECK(expect(o.sigma_z, derivative(sys, basis_state(sys, true))) == Approx(-2.0 * gr).epsilon(1e-13));

    // one photon decays at kappa
    const TruncatedSystem bare = quiet_cavity(false);
    CHECK(expect(o.number, derivative(bare, basis_state(bare, false, 1))) ==
          Approx(-bare.kappa.angular()).epsilon(1e-13));

    Matrix wrong = Matrix::Zero(3, 3);
    Matrix out = Matrix::Zero(3, 3);
    CHECK_THROWS_AS(build_generator(sys).apply(0.0, wrong, out), InvalidParameter);
    CHECK_THROWS_AS(Evolution(build_generator(sys), wrong), InvalidParameter);
    CHECK_THROWS_AS(basis_state(sys, false, 4), InvalidParameter);

    TruncatedSystem tiny = sys;
    tiny.fock_dim = 1;
    CHECK_THROWS_AS(build_generator(tiny), InvalidParameter);
}

TEST_CASE("photon decay follows exp(-kappa t)") {
    OperatingPoint op = testing::device_point();
    op.photon_number = 0.0;
    op.resonator.coupling = {};
    op.resonator.quality_factor = 100.0;  // kappa large enough to integrate through
    const TruncatedSystem sys = TruncatedSystem::from_operating_point(op, 3);
    const Operators o = operators(sys);
    Evolution evo(build_generator(sys), basis_state(sys, false, 1));
    const double kappa = sys.kappa.angular();
    for (int step = 1; step <= 6; ++step) {
        evo.advance({0.5 / kappa, 200, true}, {});
        CHECK(expect(o.number, evo.state()) == Approx(std::exp(-kappa * evo.time())).epsilon(1e-8));
    }
    CHECK(evo.trace_drift() < 1e-9);
}

TEST_CASE("time evolution reaches the periodic steady state") {
    const TruncatedSystem sys = qubit_at_ratio(1.5, 0.1);
    const EvolutionResult ev = evolve_to_steady(sys);
    CHECK(ev.trace_drift < 1e-9);
    CHECK(ev.hermiticity_error < 1e-12);
    CHECK(ev.min_eigenvalue > -1e-9);
    CHECK(ev.window.commensurate);

    // one-period propagator reference (tools/derive_reference.py). The stopping
    // rule (window-to-window change < 1e-8, relaxing by ~1% per window) leaves
    // about 1e-6 of transient.
    const double sz = ev.period_averaged_expectations.at("sigma_z").real();
    CHECK(sz == Approx(-0.9717133163738475).epsilon(5e-6));

    // harmonic balance on the same generator
    const Operators o = operators(sys);
    const PeriodicSteadyState hb = periodic_steady_state(build_generator(sys));
    CHECK(hb.fourier(o.sigma_z, 0.0).real() == Approx(-0.9717133163738475).epsilon(1e-9));
    CHECK(hb.residual() < 1e-10);
    CHECK(hb.outer_shell_norm() < 1e-6);
    const double wd = kWd.angular();
    CHECK(std::abs(hb.fourier(o.sigma_plus, wd) - ev.period_averaged_expectations.at("sigma_plus@+drive")) < 1e-5);
    CHECK(std::abs(hb.fourier(o.sigma_plus, -wd) - ev.period_averaged_expectations.at("sigma_plus@-drive")) < 1e-5);
}

TEST_CASE("harmonic balance matches the propagator oracle at strong drive") {
    const TruncatedSystem sys =
        TruncatedSystem::driven_qubit(2.97_GHz, {1.0, 0.0}, {{1_GHz, kWd, ToneRole::drive}}, kRates);
    const Operators o = operators(sys);
    HarmonicBalanceConfig cfg;
    cfg.max_order = 8;
    const PeriodicSteadyState hb = periodic_steady_state(build_generator(sys), cfg);
    CHECK(hb.fourier(o.sigma_z, 0.0).real() == Approx(-0.8826584795790963).epsilon(1e-9));
    const std::complex<double> plus(-4.149546742967e-02, 9.861526252821e-05);
    const std::complex<double> minus(9.284407984745e-02, 4.880923395795e-04);
    CHECK(std::abs(hb.fourier(o.sigma_plus, kWd.angular()) - plus) < 1e-9);
    CHECK(std::abs(hb.fourier(o.sigma_plus, -kWd.angular()) - minus) < 1e-9);

    TruncatedSystem closed = sys;
    closed.rates = {};
    CHECK_THROWS_AS(periodic_steady_state(build_generator(closed)), InvalidParameter);
}

TEST_CASE("resonant spectroscopy raises the population") {
    const ShiftResult s = compute_shift(kQubit, EnergyBias{}, {1_GHz, kWd, ToneRole::drive});
    const std::vector<ClassicalTone> drive{{1_GHz, kWd, ToneRole::drive}};
    std::vector<ClassicalTone> both = drive;
    both.push_back({5_MHz, s.rabi_splitting, ToneRole::spectroscopy});

    const TruncatedSystem a = TruncatedSystem::driven_qubit(2.97_GHz, {1.0, 0.0}, drive, kRates);
    const TruncatedSystem b = TruncatedSystem::driven_qubit(2.97_GHz, {1.0, 0.0}, both, kRates);
    const Operators o = operators(a);
    const double only_drive = periodic_steady_state(build_generator(a)).fourier(o.sigma_z, 0.0).real();
    const double with_spec = periodic_steady_state(build_generator(b)).fourier(o.sigma_z, 0.0).real();
    CHECK(with_spec > only_drive + 0.05);
}

TEST_CASE("floquet splitting") {
    CHECK(floquet_quasienergies({2.97_GHz, kWd, {}}).splitting.ghz() == Approx(2.97).epsilon(1e-14));

    // one-period propagator reference (tools/derive_reference.py)
    const double expected[] = {2.912853460547394, 2.746751942235592, 2.486105966113539};
    for (int i = 0; i < 3; ++i) {
        const Frequency bar = Frequency::ghz(i + 1.0);
        const FloquetResult r = floquet_quasienergies({2.97_GHz, kWd, bar});
        CHECK(r.splitting.ghz() == Approx(expected[i]).epsilon(1e-9));
        CHECK(r.convergence < 1e-6);
        CHECK(floquet_quasienergies({2.97_GHz, kWd, -bar}).splitting.ghz() == Approx(r.splitting.ghz()).epsilon(1e-13));
    }

    // deviation from the perturbative shift grows as the fourth power of the drive
    const Frequency ac = ac_shift_approx(1_GHz, 2.97_GHz, kWd);
    const double dev = std::abs(expected[0] - (2.97 + ac.ghz()));
    CHECK(dev < std::pow(1.0, 4) / std::pow(4.8, 3));

    FloquetProblem bad{2.97_GHz, kWd, 1_GHz, 2};
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    CHECK_THROWS_AS(floquet_quasienergies({3_GHz, 3.01_GHz, 100_MHz}), ZoneAmbiguity);
}

TEST_CASE("transmission oracle") {
    OperatingPoint op = testing::device_point();
    op.resonator.coupling = {};
    const auto scan = probe_scan_around_resonance(op.resonator, 2);
    REQUIRE(scan.size() == 5);
    const auto pts = transmission_oracle(TruncatedSystem::from_operating_point(op, 4), scan);
    CHECK(std::abs(pts[2].transmission) == Approx(1.0).epsilon(1e-6));
    for (const auto& p : pts) {
        const double x = (p.probe - op.resonator.fundamental) / op.resonator.kappa();
        CHECK(std::abs(p.transmission) == Approx(0.5 / std::hypot(x, 0.5)).epsilon(1e-6));
        CHECK(p.top_fock < 1e-4);
    }

    // far-detuned qubit barely pulls the resonance
    op = testing::device_point(6.0);
    const auto far = transmission_oracle(TruncatedSystem::from_operating_point(op, 4), scan);
    for (const auto& p : far) {
        const double x = (p.probe - op.resonator.fundamental) / op.resonator.kappa();
        CHECK(std::abs(std::abs(p.transmission) - 0.5 / std::hypot(x, 0.5)) < 0.03);
    }

    // an undisplaced basis with three levels cannot hold five photons
    TruncatedSystem raw = TruncatedSystem::from_operating_point(testing::device_point(), 3);
    raw.displaced = false;
    CHECK_THROWS_AS(transmission_point(raw), TruncationError);
}

TEST_CASE("co-rotating oracle reproduces the analytic transmission") {
    const OperatingPoint op = testing::device_point();
    const CheckReport rep = transmission_check(op, probe_scan_around_resonance(op.resonator, 2), 6, true);
    CHECK(rep.max_deviation() < 1e-3);
}

TEST_CASE("oracle checks") {
    std::vector<OperatingPoint> pts;
    for (double eps : {-3.0, 0.0, 3.0}) {
        const TruncatedSystem sys = qubit_at_ratio(eps, 0.1);
        OperatingPoint p = testing::device_point(eps);
        p.tones.drive.amplitude = sys.qubit_tones[0].amplitude;
        pts.push_back(p);
    }
    const CheckReport pop = population_check(pts);
    CHECK(pop.rows.size() == 3);
    CHECK(pop.max_deviation() < 1e-3);
    CHECK(pop.within_bounds());

    const CheckReport shift = shift_check(testing::device_point(), {1_GHz, 2_GHz});
    CHECK(shift.within_bounds());
    CHECK(std::abs(shift.rows[1].deviation) > std::abs(shift.rows[0].deviation));

    const RelaxationFit fit = relaxation_fit(testing::device_point(0.0, 1.0));
    CHECK(fit.predicted_mhz == Approx(10.26036112801653 + 0.5207222560330687).epsilon(1e-12));
    CHECK(std::abs(fit.fitted_mhz - fit.predicted_mhz) / fit.predicted_mhz < std::pow(1.0 / 4.8, 2));
    CHECK(std::abs(fit.fitted_mhz - fit.predicted_mhz) < std::abs(fit.fitted_mhz - fit.unmodified_mhz));
    CHECK(fit.stationary == Approx(-0.8826584795790963).epsilon(1e-8));

    const auto scan = probe_scan_around_resonance(testing::device_point().resonator, 4);
    REQUIRE(scan.size() == 9);
    CHECK(scan[4] == testing::device_point().resonator.fundamental);
}
