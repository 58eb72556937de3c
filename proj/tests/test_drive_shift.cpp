#include <doctest.h>

#include <cmath>

#include "acshift/drive_shift.hpp"
#include "acshift/errors.hpp"
#include "support.hpp"

using namespace acshift;
using namespace acshift::literals;
using doctest::Approx;

namespace {

const QubitParams kQubit{2.97_GHz, 160.0};
const Frequency kWd = 7.77_GHz;
const DissipationRates kRates{10_MHz, 20_MHz};

Tone drive(double ghz) { return {Frequency::ghz(ghz), kWd, ToneRole::drive}; }

}  // namespace

TEST_CASE("ac shift at the degeneracy point") {
    // reference: tools/derive_reference.py
    const double expected[] = {-0.05761173184357542, -0.2304469273743017, -0.5185055865921788};
    const double rabi[] = {2.912388268156425, 2.739553072625698, 2.451494413407821};
    for (int i = 0; i < 3; ++i) {
        const ShiftResult s = compute_shift(kQubit, EnergyBias{}, drive(i + 1.0));
        CHECK(s.omega_ac.ghz() == Approx(expected[i]).epsilon(1e-13));
        CHECK(s.rabi_splitting.ghz() == Approx(rabi[i]).epsilon(1e-13));
    }
    // the rounded values quoted for the device
    CHECK(compute_shift(kQubit, EnergyBias{}, drive(1)).omega_ac.ghz() == Approx(-0.0576).epsilon(1e-3));
    CHECK(compute_shift(kQubit, EnergyBias{}, drive(2)).omega_ac.ghz() == Approx(-0.2304).epsilon(1e-3));
    CHECK(compute_shift(kQubit, EnergyBias{}, drive(3)).omega_ac.ghz() == Approx(-0.5185).epsilon(1e-3));
    CHECK(compute_shift(kQubit, EnergyBias{}, drive(3)).rabi_splitting.ghz() == Approx(2.45).epsilon(1e-2));
}

TEST_CASE("ac shift limits and errors") {
    CHECK(ac_shift_approx({}, 2.97_GHz, kWd).ghz() == 0.0);
    CHECK_THROWS_AS(ac_shift_approx(1_GHz, kWd, kWd), DegenerateDenominator);
    CHECK_THROWS_AS(ac_shift_exact(1_GHz, kWd, kWd, {}), DegenerateDenominator);
    CHECK_NOTHROW(ac_shift_exact(1_GHz, kWd, kWd, 25_MHz));

    // vanishing linewidth reduces to the approximation exactly
    CHECK(ac_shift_exact(1_GHz, 2.97_GHz, kWd, {}).ghz() ==
          Approx(ac_shift_approx(1_GHz, 2.97_GHz, kWd).ghz()).epsilon(1e-14));
    const double with_width = ac_shift_exact(1_GHz, 2.97_GHz, kWd, 25_MHz).ghz();
    CHECK(with_width == Approx(-0.0576091584706669).epsilon(1e-13));
    const double approx = ac_shift_approx(1_GHz, 2.97_GHz, kWd).ghz();
    CHECK((with_width - approx) / approx == Approx(-4.466751521207358e-5).epsilon(1e-8));
}

TEST_CASE("ac shift properties") {
    testing::Gen gen(21);
    for (int i = 0; i < testing::kCases; ++i) {
        const QubitParams q = gen.qubit();
        const FluxBias b = EnergyBias{Frequency::ghz(gen.bias())};
        const Frequency wq = level_splitting(q, b);
        const Frequency wd = gen.drive_away_from(wq, 0.2);
        const Frequency bar = Frequency::ghz(gen.uniform(0.0, 2.0));
        const Frequency ac = ac_shift_approx(bar, wq, wd);
        // even in the drive amplitude, red-shifted for a blue-detuned drive
        CHECK(ac == ac_shift_approx(-bar, wq, wd));
        if (bar > Frequency{}) CHECK((wd > wq) == (ac < Frequency{}));
        // quadratic scaling
        CHECK(ac_shift_approx(bar * 2.0, wq, wd).ghz() == Approx(4.0 * ac.ghz()).epsilon(1e-12));
        // symmetric in the sign of the bias
        const double eps = energy_bias(q, b).ghz();
        CHECK(rabi_splitting(q, EnergyBias{Frequency::ghz(eps)}, ac).ghz() ==
              Approx(rabi_splitting(q, EnergyBias{Frequency::ghz(-eps)}, ac).ghz()).epsilon(1e-14));
        CHECK(compute_shift(q, b, Tone{{}, wd, ToneRole::drive}).rabi_splitting.ghz() ==
              Approx(wq.ghz()).epsilon(1e-14));
    }
}

TEST_CASE("shifted splitting away from the degeneracy point") {
    const ShiftResult s = compute_shift(kQubit, EnergyBias{2_GHz}, drive(2));
    CHECK(s.rabi_splitting.ghz() == Approx(3.384927586268454).epsilon(1e-13));
    CHECK(s.alpha == Approx(0.4397474511251913).epsilon(1e-13));
    CHECK(s.beta == Approx(0.7717885753814373).epsilon(1e-13));
    CHECK(s.bar_drive.ghz() == Approx(2.0 * 0.8294633337980963).epsilon(1e-13));
}

TEST_CASE("coupling factors") {
    const ShiftResult undriven = compute_shift(kQubit, EnergyBias{1.3_GHz}, drive(0));
    const Projections p = projections(kQubit, EnergyBias{1.3_GHz});
    CHECK(undriven.alpha == Approx(p.check).epsilon(1e-15));
    CHECK(undriven.beta == Approx(p.bar).epsilon(1e-15));
    CHECK(undriven.a_factor == 1.0);
    CHECK(undriven.b_factor == 1.0);
    CHECK(undriven.c_factor == 0.0);

    const ShiftResult s = compute_shift(kQubit, EnergyBias{}, drive(1));
    CHECK(s.alpha == 0.0);
    CHECK(s.c_factor == Approx(0.05207222560330687).epsilon(1e-13));
    CHECK(s.a_factor == Approx(0.9739638871983466).epsilon(1e-13));
    CHECK(s.b_factor == Approx(0.996680888353984).epsilon(1e-13));
    CHECK(s.beta == Approx(s.b_factor).epsilon(1e-13));

    // the renormalization is second order in the drive
    testing::Gen gen(22);
    for (int i = 0; i < testing::kCases; ++i) {
        const QubitParams q = gen.qubit();
        const FluxBias b = EnergyBias{Frequency::ghz(gen.bias())};
        const Frequency wq = level_splitting(q, b);
        const Frequency wd = gen.drive_away_from(wq, 1.0);
        const double amp = gen.uniform(0.01, 0.3);
        const ShiftResult r = compute_shift(q, b, {Frequency::ghz(amp), wd, ToneRole::drive});
        const ShiftResult r2 = compute_shift(q, b, {Frequency::ghz(amp / 2), wd, ToneRole::drive});
        const double dev = std::abs(1.0 - r.beta * wq.ghz() / q.gap.ghz());
        const double dev2 = std::abs(1.0 - r2.beta * wq.ghz() / q.gap.ghz());
        CHECK(dev2 <= 0.3 * dev + 1e-14);
    }
}

TEST_CASE("renormalized rates") {
    const Detunings d = detunings(2.97_GHz, kWd);
    CHECK(d.minus.ghz() == Approx(-4.8));
    CHECK(d.plus.ghz() == Approx(10.74));

    const ModifiedRates m = modified_rates(kRates, 1_GHz, d);
    CHECK(m.relaxation_hat.mhz() == Approx(10.26036112801653).epsilon(1e-13));
    CHECK(m.excitation_hat.mhz() == Approx(0.5207222560330687).epsilon(1e-13));
    CHECK(m.dephasing_hat.mhz() == Approx(19.2189166159504).epsilon(1e-13));
    CHECK(m.decoherence_hat.mhz() == Approx(24.6094583079752).epsilon(1e-13));

    const ModifiedRates bare = modified_rates(kRates, {}, d);
    CHECK(bare.relaxation_hat == kRates.relaxation);
    CHECK(bare.excitation_hat == Rate{});
    CHECK(bare.dephasing_hat == kRates.pure_dephasing);

    // Gamma_r = 2 gamma_phi leaves the dephasing untouched
    const ModifiedRates balanced = modified_rates({20_MHz, 10_MHz}, 1_GHz, d);
    CHECK(balanced.dephasing_hat.mhz() == Approx(10.0).epsilon(1e-14));

    CHECK_THROWS_AS(modified_rates(kRates, 5_GHz, detunings(6.0_GHz, kWd)), NegativeRate);

    testing::Gen gen(23);
    for (int i = 0; i < testing::kCases; ++i) {
        const DissipationRates r = gen.rates();
        const Frequency wq = Frequency::ghz(gen.uniform(1.0, 8.0));
        const Detunings dd = detunings(wq, gen.drive_away_from(wq, 1.0));
        const Frequency bar = Frequency::ghz(gen.uniform(0.0, 0.5));
        const double c = mixing_parameter(bar, dd);
        ModifiedRates h;
        try {
            h = modified_rates(r, bar, dd);
        } catch (const NegativeRate&) {
            continue;
        }
        // Gamma_r_hat + Gamma_e_hat = Gamma_r - (C/2)(Gamma_r - 2 gamma_phi)
        CHECK((h.relaxation_hat + h.excitation_hat).mhz() ==
              Approx((r.relaxation - (c / 2.0) * (r.relaxation - 2.0 * r.pure_dephasing)).mhz()).epsilon(1e-12));
        CHECK(h.decoherence_hat.mhz() ==
              Approx(((h.relaxation_hat + h.excitation_hat) / 2.0 + h.dephasing_hat).mhz()).epsilon(1e-12));
    }
}

TEST_CASE("driven qubit sidebands") {
    const SidebandAmplitudes zero = sideband_amplitudes({}, 2.97_GHz, kWd, 25_MHz, -1.0);
    CHECK(zero.plus == std::complex<double>{});
    CHECK(zero.minus == std::complex<double>{});

    // resonant: s_- = i bar / (2 Gamma_phi) at sz = -1
    const SidebandAmplitudes res = sideband_amplitudes(10_MHz, 3_GHz, 3_GHz, 25_MHz, -1.0);
    CHECK(res.minus.real() == Approx(0.0));
    CHECK(res.minus.imag() == Approx(10.0 / (2 * 25.0)).epsilon(1e-14));
    CHECK_THROWS_AS(sideband_amplitudes(10_MHz, 3_GHz, 3_GHz, {}, -1.0), DegenerateDenominator);

    // Fourier components of <sigma_+>(t) from the one-period propagator of the
    // master equation (tools/derive_reference.py), eps = 0, bar = 1 GHz, with
    // the population the same propagator gives
    const double sz = -0.8826584795790963;
    const std::complex<double> plus_oracle(-4.149546742967e-02, 9.861526252821e-05);
    const std::complex<double> minus_oracle(9.284407984745e-02, 4.880923395795e-04);
    const SidebandAmplitudes s = sideband_amplitudes(1_GHz, 2.97_GHz, kWd, 25_MHz, sz);
    const double ratio2 = std::pow(1.0 / 4.8, 2);
    CHECK(std::abs(s.plus - plus_oracle) / std::abs(plus_oracle) < ratio2);
    CHECK(std::abs(s.minus - minus_oracle) / std::abs(minus_oracle) < ratio2);
    // the linewidth enters with the oracle's sign
    CHECK(std::signbit(s.plus.imag()) == std::signbit(plus_oracle.imag()));
    CHECK(std::signbit(s.minus.imag()) == std::signbit(minus_oracle.imag()));
}

TEST_CASE("off-resonant population") {
    CHECK(offres_population({}, 2.97_GHz, kWd, kRates) == -1.0);
    CHECK_THROWS_AS(offres_population(1_GHz, 2.97_GHz, kWd, {{}, 20_MHz}), InvalidParameter);

    // strong resonant drive saturates towards 0 from below
    double prev = -1.0;
    for (double amp : {0.01, 0.1, 1.0, 10.0}) {
        const double sz = offres_population(Frequency::ghz(amp), 3_GHz, 3_GHz, kRates);
        CHECK(sz < 0.0);
        CHECK(sz > prev);
        prev = sz;
    }
    CHECK(prev > -1e-3);

    // one-period propagator oracle at bar / |delta_-| = 0.1, eps = -3 ... 3 GHz
    const double eps[] = {-3.0, -1.5, 0.0, 1.5, 3.0};
    const double oracle[] = {-0.9734996651346436, -0.9717133163738475, -0.9707441647515145,
                             -0.9717133163735241, -0.9734996651343686};
    for (int i = 0; i < 5; ++i) {
        const FluxBias b = EnergyBias{Frequency::ghz(eps[i])};
        const Frequency wq = level_splitting(kQubit, b);
        const Frequency bar = abs(wq - kWd) * 0.1;
        CHECK(std::abs(offres_population(bar, wq, kWd, kRates) - oracle[i]) < 2e-4);
    }
    // bar = 1 GHz is ratio ~0.2, outside the expansion regime; deviation is ~2.2e-3
    CHECK(std::abs(offres_population(1_GHz, 2.97_GHz, kWd, kRates) - (-0.8826584795790963)) < 3e-3);
}

TEST_CASE("validity flag") {
    CHECK(compute_shift(kQubit, EnergyBias{}, drive(1)).within_validity());
    CHECK(compute_shift(kQubit, EnergyBias{}, drive(1)).expansion_ratio == Approx(1.0 / 4.8));
    CHECK_FALSE(compute_shift(kQubit, EnergyBias{}, drive(1.5)).within_validity());
}
