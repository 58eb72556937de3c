#include "acshift/oracle/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "acshift/errors.hpp"

namespace acshift::oracle {

namespace odeint = boost::numeric::odeint;
using State = std::vector<cd>;

namespace {

constexpr double kCycleTolerance = 1e-6;
constexpr int kMaxCommonMultiple = 1000;

std::vector<double> distinct_frequencies(const PeriodicGenerator& gen) {
    std::vector<double> out;
    for (const auto& h : gen.harmonics()) {
        const double f = std::abs(h.frequency);
        if (f == 0.0) continue;
        const bool seen = std::any_of(out.begin(), out.end(), [&](double o) {
            return std::abs(o - f) <= 1e-12 * f;
        });
        if (!seen) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
}

cd expectation(const Matrix& op, const Eigen::Ref<const Matrix>& rho) {
    return (op.cwiseProduct(rho.transpose())).sum();
}

struct Rhs {
    const PeriodicGenerator* gen;
    Eigen::Index dim;

    void operator()(const State& x, State& dxdt, double t) const {
        dxdt.resize(x.size());
        Eigen::Map<const Matrix> rho(x.data(), dim, dim);
        Eigen::Map<Matrix> out(dxdt.data(), dim, dim);
        gen->apply(t, rho, out);
    }
};

using Stepper = odeint::dense_output_runge_kutta<
    odeint::controlled_runge_kutta<odeint::runge_kutta_dopri5<State>>>;

std::string tone_label(ToneRole role) {
    switch (role) {
        case ToneRole::probe: return "probe";
        case ToneRole::drive: return "drive";
        case ToneRole::spectroscopy: return "spectroscopy";
    }
    return "tone";
}

}  // namespace

Window averaging_window(const PeriodicGenerator& gen, const IntegratorConfig& cfg) {
    const auto freqs = distinct_frequencies(gen);
    Window w;
    if (cfg.window) {
        w.duration = *cfg.window;
        const double fast = freqs.empty() ? two_pi : freqs.back();
        w.samples = std::max(cfg.samples_per_fast_period,
                             static_cast<int>(std::ceil(cfg.samples_per_fast_period * w.duration *
                                                        fast / two_pi)));
        w.commensurate = true;
        return w;
    }
    if (freqs.empty()) {
        w.duration = 1.0;
        w.samples = cfg.samples_per_fast_period;
        return w;
    }
    const double slow_period = two_pi / freqs.front();
    const double fast_period = two_pi / freqs.back();
    w.commensurate = false;
    for (int m = 1; m <= kMaxCommonMultiple; ++m) {
        const double t = m * slow_period;
        const bool all_integer = std::all_of(freqs.begin(), freqs.end(), [&](double f) {
            const double cycles = t * f / two_pi;
            return std::abs(cycles - std::round(cycles)) < kCycleTolerance;
        });
        if (all_integer) {
            w.duration = t;
            w.commensurate = true;
            break;
        }
    }
    if (!w.commensurate) w.duration = cfg.incommensurate_periods * slow_period;
    w.samples = static_cast<int>(std::ceil(cfg.samples_per_fast_period * w.duration / fast_period));
    return w;
}

std::vector<ObservableRequest> standard_observables(const TruncatedSystem& sys) {
    const Operators o = operators(sys);
    std::vector<ObservableRequest> req;
    req.push_back({"sigma_z", o.sigma_z, 0.0});
    req.push_back({"sigma_plus@0", o.sigma_plus, 0.0});
    for (const auto& tone : sys.qubit_tones) {
        const std::string label = tone_label(tone.role);
        req.push_back({"sigma_plus@+" + label, o.sigma_plus, tone.frequency.angular()});
        req.push_back({"sigma_plus@-" + label, o.sigma_plus, -tone.frequency.angular()});
    }
    if (sys.with_cavity) {
        const double wp = sys.probe.frequency.angular();
        req.push_back({"sigma_plus@+probe", o.sigma_plus, wp});
        req.push_back({"sigma_plus@-probe", o.sigma_plus, -wp});
        req.push_back({"b@probe", o.a, sys.probe_component_frequency()});
        req.push_back({"photons", o.number, 0.0});
    }
    return req;
}

Evolution::Evolution(PeriodicGenerator gen, Matrix rho0, IntegratorConfig cfg)
    : gen_(std::move(gen)), cfg_(cfg) {
    const auto d = gen_.dim();
    if (rho0.rows() != d || rho0.cols() != d)
        throw InvalidParameter("initial state dimension does not match the generator");
    x_.assign(rho0.data(), rho0.data() + rho0.size());
    const auto freqs = distinct_frequencies(gen_);
    const double fast = freqs.empty() ? gen_.static_hamiltonian().cwiseAbs().maxCoeff() : freqs.back();
    dt_ = fast > 0 ? 0.01 * two_pi / fast : 1e-3;
}

Matrix Evolution::state() const {
    const auto d = gen_.dim();
    return Eigen::Map<const Matrix>(x_.data(), d, d);
}

WindowAverage Evolution::advance(const Window& window, const std::vector<ObservableRequest>& requests) {
    const auto d = gen_.dim();
    Rhs rhs{&gen_, d};
    Stepper stepper = odeint::make_dense_output(cfg_.absolute_tolerance, cfg_.relative_tolerance,
                                                odeint::runge_kutta_dopri5<State>());
    stepper.initialize(x_, t_, dt_);

    WindowAverage avg;
    avg.start = t_;
    avg.mean_state = Matrix::Zero(d, d);
    std::vector<cd> acc(requests.size(), cd{});

    const int n = std::max(window.samples, 1);
    const double h = window.duration / n;
    double weight_sum = 0.0;
    State xs(x_.size());
    for (int k = 0; k <= n; ++k) {
        const double ts = t_ + k * h;
        while (stepper.current_time() < ts) stepper.do_step(std::ref(rhs));
        if (k == 0)
            xs = x_;  // no step taken yet; nothing to interpolate
        else
            stepper.calc_state(ts, xs);
        Eigen::Map<const Matrix> rho(xs.data(), d, d);

        trace_drift_ = std::max(trace_drift_, std::abs(rho.trace() - 1.0));
        hermiticity_error_ = std::max(hermiticity_error_, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        if (k == n) break;  // window end: state only

        double w = 1.0;
        if (!window.commensurate) {
            const double s = std::sin(std::numbers::pi * (k + 0.5) / n);
            w = s * s;
        }
        weight_sum += w;
        avg.mean_state += w * rho;
        for (std::size_t r = 0; r < requests.size(); ++r)
            acc[r] += w * expectation(requests[r].op, rho) * std::polar(1.0, requests[r].frequency * ts);
    }
    avg.mean_state /= weight_sum;
    for (std::size_t r = 0; r < requests.size(); ++r) avg.values[requests[r].name] = acc[r] / weight_sum;

    dt_ = stepper.current_time_step();
    t_ += window.duration;
    x_ = xs;
    return avg;
}

EvolutionResult evolve_to_steady(const TruncatedSystem& sys, const IntegratorConfig& cfg,
                                 std::optional<Matrix> initial) {
    PeriodicGenerator gen = build_generator(sys);
    if (sys.rates.relaxation <= Rate{} || (sys.with_cavity && sys.kappa <= Rate{}))
        throw InvalidParameter("evolve_to_steady requires positive dissipation rates");
    const Window window = averaging_window(gen, cfg);
    const auto requests = standard_observables(sys);
    Matrix rho0 = initial ? *initial : basis_state(sys, false);

    Evolution evo(std::move(gen), std::move(rho0), cfg);
    WindowAverage prev = evo.advance(window, requests);
    int stable = 0;
    for (int w = 2; w <= cfg.max_windows; ++w) {
        WindowAverage cur = evo.advance(window, requests);
        double change = 0.0;
        for (const auto& [name, value] : cur.values) change = std::max(change, std::abs(value - prev.values[name]));
        prev = std::move(cur);
        stable = change < cfg.convergence_tolerance ? stable + 1 : 0;
        if (stable >= 1 && w >= cfg.min_windows) {
            EvolutionResult res;
            res.steady_density_matrix = prev.mean_state;
            res.period_averaged_expectations = prev.values;
            res.trace_drift = evo.trace_drift();
            res.hermiticity_error = evo.hermiticity_error();
            const Matrix herm = 0.5 * (prev.mean_state + prev.mean_state.adjoint());
            res.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix>(herm).eigenvalues().minCoeff();
            res.top_fock_occupation = top_fock_occupation(sys, prev.mean_state);
            res.final_time = evo.time();
            res.windows = w;
            res.window = window;
            return res;
        }
    }
    throw ConvergenceError("master equation did not reach a periodic steady state within " +
                           std::to_string(cfg.max_windows) + " averaging windows");
}

}  // namespace acshift::oracle
