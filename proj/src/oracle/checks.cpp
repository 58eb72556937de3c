#include "acshift/oracle/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "acshift/errors.hpp"
#include "acshift/oracle/floquet.hpp"
#include "acshift/oracle/transmission.hpp"

namespace acshift::oracle {

namespace {

std::string bias_label(const OperatingPoint& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "eps=%.4g GHz", energy_bias(p.qubit, p.bias).ghz());
    return buf;
}

TruncatedSystem drive_only_qubit(const OperatingPoint& p) {
    return TruncatedSystem::driven_qubit(
        level_splitting(p.qubit, p.bias), projections(p.qubit, p.bias),
        {{p.tones.drive.amplitude, p.tones.drive.frequency, ToneRole::drive}}, p.rates);
}

}  // namespace

double CheckReport::max_deviation() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, std::abs(r.deviation));
    return m;
}

bool CheckReport::within_bounds() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const CheckRow& r) { return r.bound == 0.0 || std::abs(r.deviation) <= r.bound; });
}

namespace {
constexpr double kPopulationBound = 1e-3;
constexpr double kTransmissionBound = 0.02;
}  // namespace

CheckReport population_check(const std::vector<OperatingPoint>& points, const IntegratorConfig& cfg) {
    CheckReport rep{"population", "energy_bias_ghz", "sigma_z", "absolute", {}};
    for (const auto& p : points) {
        p.validate();
        const Frequency wq = level_splitting(p.qubit, p.bias);
        const Frequency bar = effective_drive(p.qubit, p.bias, p.tones.drive.amplitude);
        const double analytic = offres_population(bar, wq, p.tones.drive.frequency, p.rates);
        const EvolutionResult ev = evolve_to_steady(drive_only_qubit(p), cfg);
        const double oracle = ev.period_averaged_expectations.at("sigma_z").real();
        rep.rows.push_back({bias_label(p), energy_bias(p.qubit, p.bias).ghz(), analytic, oracle,
                            analytic - oracle, kPopulationBound});
    }
    return rep;
}

CheckReport shift_check(const OperatingPoint& base, const std::vector<Frequency>& drive_amplitudes) {
    CheckReport rep{"shift", "drive_amplitude_ghz", "splitting_ghz", "relative", {}};
    const Frequency wq = level_splitting(base.qubit, base.bias);
    const Frequency wd = base.tones.drive.frequency;
    for (Frequency amp : drive_amplitudes) {
        const Frequency bar = effective_drive(base.qubit, base.bias, amp);
        const Frequency ac = ac_shift_approx(bar, wq, wd);
        const FloquetResult fl = floquet_quasienergies({wq, wd, bar});
        const double exact_shift = (fl.splitting - wq).ghz();
        const double ratio = bar / detunings(wq, wd).minus;
        char label[64];
        std::snprintf(label, sizeof label, "Omega_d=%.4g GHz", amp.ghz());
        rep.rows.push_back({label, amp.ghz(), (wq + ac).ghz(), fl.splitting.ghz(),
                            ac.ghz() == 0.0 ? 0.0 : (exact_shift - ac.ghz()) / ac.ghz(), ratio * ratio});
    }
    return rep;
}

RelaxationFit relaxation_fit(const OperatingPoint& point) {
    point.validate();
    const TruncatedSystem sys = drive_only_qubit(point);
    if (!(sys.rates.relaxation > Rate{})) throw InvalidParameter("relaxation fit needs Gamma_r > 0");

    RelaxationFit fit;
    const ShiftResult shift = compute_shift(point.qubit, point.bias, point.tones.drive);
    const ModifiedRates hat = modified_rates(point.rates, shift.bar_drive, shift.detuning);
    fit.predicted_mhz = (hat.relaxation_hat + hat.excitation_hat).mhz();
    fit.unmodified_mhz = point.rates.relaxation.mhz();

    const Operators o = operators(sys);
    HarmonicBalanceConfig hb;
    hb.max_order = 6;
    fit.stationary = periodic_steady_state(build_generator(sys), hb).fourier(o.sigma_z, 0.0).real();

    IntegratorConfig cfg;
    Evolution evo(build_generator(sys), basis_state(sys, true), cfg);
    const double gr = sys.rates.relaxation.angular();
    Window w;
    w.duration = two_pi / point.tones.drive.frequency.angular();
    w.samples = cfg.samples_per_fast_period;
    const std::vector<ObservableRequest> req{{"sigma_z", o.sigma_z, 0.0}};

    // Least squares of log|<sigma_z> - s_inf| against the window centre time.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    while (evo.time() < 8.0 / gr) {
        const WindowAverage avg = evo.advance(w, req);
        const double mid = avg.start + w.duration / 2.0;
        if (avg.start < 4.0 / gr) continue;
        const double y = std::log(std::abs(avg.values.at("sigma_z").real() - fit.stationary));
        sx += mid;
        sy += y;
        sxx += mid * mid;
        sxy += mid * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.fitted_mhz = Frequency::angular(-slope).mhz();
    return fit;
}

CheckReport rates_check(const std::vector<OperatingPoint>& points) {
    CheckReport rep{"rates", "drive_amplitude_ghz", "relaxation_plus_excitation_mhz", "relative", {}};
    for (const auto& p : points) {
        const RelaxationFit f = relaxation_fit(p);
        char label[64];
        std::snprintf(label, sizeof label, "Omega_d=%.4g GHz", p.tones.drive.amplitude.ghz());
        const ShiftResult shift = compute_shift(p.qubit, p.bias, p.tones.drive);
        rep.rows.push_back({label, p.tones.drive.amplitude.ghz(), f.predicted_mhz, f.fitted_mhz,
                            (f.predicted_mhz - f.fitted_mhz) / f.fitted_mhz,
                            shift.expansion_ratio * shift.expansion_ratio});
    }
    return rep;
}

CheckReport transmission_check(const OperatingPoint& point, const std::vector<Frequency>& probe_scan,
                               int fock_dim, bool rotating_wave_coupling) {
    CheckReport rep{"transmission", "probe_ghz", "abs_t", "absolute", {}};
    TruncatedSystem sys = TruncatedSystem::from_operating_point(point, fock_dim);
    sys.rotating_wave_coupling = rotating_wave_coupling;
    const auto oracle = transmission_oracle(sys, probe_scan);
    for (std::size_t i = 0; i < probe_scan.size(); ++i) {
        OperatingPoint p = point;
        p.tones.probe.frequency = probe_scan[i];
        const double analytic = std::abs(solve(p).transmission);
        const double o = std::abs(oracle[i].transmission);
        char label[64];
        std::snprintf(label, sizeof label, "omega_p=%.9g GHz", probe_scan[i].ghz());
        rep.rows.push_back({label, probe_scan[i].ghz(), analytic, o, analytic - o, kTransmissionBound});
    }
    return rep;
}

std::vector<Frequency> probe_scan_around_resonance(const ResonatorParams& r, int span) {
    std::vector<Frequency> out;
    for (int k = -span; k <= span; ++k) out.push_back(r.fundamental + r.kappa() * k);
    return out;
}

}  // namespace acshift::oracle
