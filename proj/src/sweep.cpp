#include "acshift/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "acshift/errors.hpp"

namespace acshift {

namespace {

std::vector<std::string> columns_for(Quantity q) {
    switch (q) {
        case Quantity::t_abs: return {"abs_t"};
        case Quantity::t_phase: return {"arg_t"};
        case Quantity::population: return {"population"};
        case Quantity::levels: return {"upper_ghz", "lower_ghz", "population"};
    }
    return {};
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    const double hi = v[n / 2];
    if (n % 2 == 1) return hi;
    return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + n / 2));
}

// Vertex offset (in steps, within [-1/2, 1/2] for a true extremum) of the
// parabola through three equally spaced samples.
double parabolic_offset(double left, double centre, double right) {
    const double curvature = left - 2.0 * centre + right;
    if (curvature == 0.0) return 0.0;
    return std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
}

// Same error type, message prefixed with where it happened.
[[noreturn]] void rethrow_at(const std::string& where) {
    try {
        throw;
    } catch (const NegativeRate& e) {
        throw NegativeRate(where + ": " + e.what());
    } catch (const DegenerateDenominator& e) {
        throw DegenerateDenominator(where + ": " + e.what());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(where + ": " + e.what());
    } catch (const InvalidParameter& e) {
        throw InvalidParameter(where + ": " + e.what());
    } catch (const Error& e) {
        throw Error(where + ": " + e.what());
    }
}

std::string coordinates(const SweepSpec& spec, std::size_t i1, std::optional<std::size_t> i2) {
    std::string s = "at " + parameter_name(spec.axis1.parameter) + "=" + std::to_string(spec.axis1.values[i1]);
    if (i2) s += ", " + parameter_name(spec.axis2->parameter) + "=" + std::to_string(spec.axis2->values[*i2]);
    return s;
}

void point_values(const SweepSpec& spec, OperatingPoint op, std::vector<double>& out) {
    if (spec.order_policy == OrderPolicy::split_at_zero_bias)
        op.correction_order = energy_bias(op.qubit, op.bias) < Frequency{} ? CorrectionOrder::first
                                                                            : CorrectionOrder::second;
    switch (spec.quantity) {
        case Quantity::t_abs: out[0] = std::abs(solve(op).transmission); break;
        case Quantity::t_phase: out[0] = std::arg(solve(op).transmission); break;
        case Quantity::population: out[0] = solve(op).population; break;
        case Quantity::levels: {
            const Frequency omega_r = effective_qubit(op).shift.rabi_splitting;
            out[0] = omega_r.ghz() / 2.0;
            out[1] = -omega_r.ghz() / 2.0;
            out[2] = solve(op).population;
            break;
        }
    }
}

}  // namespace

std::string parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::energy_bias: return "energy_bias_ghz";
        case SweepParameter::spectroscopy_frequency: return "spectroscopy_ghz";
        case SweepParameter::probe_frequency: return "probe_ghz";
        case SweepParameter::drive_amplitude: return "drive_amplitude_ghz";
        case SweepParameter::drive_power: return "drive_power_dbm";
    }
    return "unknown";
}

Axis Axis::linspace(SweepParameter p, double start, double stop, int points) {
    if (points < 2) throw InvalidParameter("an axis needs at least 2 points");
    Axis a{p, {}};
    a.values.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) a.values.push_back(start + (stop - start) * i / (points - 1));
    return a;
}

double Axis::step() const {
    return values.size() < 2 ? 0.0 : values[1] - values[0];
}

void SweepSpec::validate() const {
    if (axis1.values.empty()) throw InvalidParameter("sweep axis1 is empty");
    if (axis2) {
        if (axis2->values.empty()) throw InvalidParameter("sweep axis2 is empty");
        if (axis2->parameter == axis1.parameter) throw InvalidParameter("sweep axes must name different parameters");
    }
    const bool uses_power = axis1.parameter == SweepParameter::drive_power ||
                            (axis2 && axis2->parameter == SweepParameter::drive_power);
    if (uses_power && !geometry) throw InvalidParameter("a drive_power axis needs a device geometry");
    fixed.validate();
}

void apply_parameter(OperatingPoint& op, SweepParameter p, double value,
                     const std::optional<DeviceGeometry>& geometry) {
    switch (p) {
        case SweepParameter::energy_bias: op.bias = EnergyBias{Frequency::ghz(value)}; break;
        case SweepParameter::spectroscopy_frequency: op.tones.spectroscopy.frequency = Frequency::ghz(value); break;
        case SweepParameter::probe_frequency: op.tones.probe.frequency = Frequency::ghz(value); break;
        case SweepParameter::drive_amplitude: op.tones.drive.amplitude = Frequency::ghz(value); break;
        case SweepParameter::drive_power:
            if (!geometry) throw InvalidParameter("drive power needs a device geometry");
            op.tones.drive.amplitude = drive_from_power(value, op.tones.drive.frequency, *geometry, op.resonator);
            break;
    }
}

MapResult evaluate(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    MapResult map;
    map.axis1 = spec.axis1;
    map.axis2 = spec.axis2;
    map.columns = columns_for(spec.quantity);
    const std::size_t n1 = map.n1();
    const std::size_t n2 = map.n2();
    const std::size_t total = n1 * n2;
    map.values.assign(map.columns.size(), std::vector<double>(total, 0.0));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = total;
    std::exception_ptr error;

    auto work = [&] {
        std::vector<double> out(map.columns.size());
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const std::size_t i1 = idx / n2;
            const std::size_t i2 = idx % n2;
            try {
                OperatingPoint op = spec.fixed;
                apply_parameter(op, spec.axis1.parameter, spec.axis1.values[i1], spec.geometry);
                if (spec.axis2) apply_parameter(op, spec.axis2->parameter, spec.axis2->values[i2], spec.geometry);
                point_values(spec, op, out);
                for (std::size_t c = 0; c < out.size(); ++c) map.values[c][idx] = out[c];
            } catch (const Error&) {
                std::lock_guard lock(error_mutex);
                if (idx < error_index) {  // report the first failing point, independent of scheduling
                    error_index = idx;
                    error = std::current_exception();
                }
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    if (error) {
        const std::size_t i1 = error_index / n2;
        const std::optional<std::size_t> i2 = spec.axis2 ? std::optional(error_index % n2) : std::nullopt;
        try {
            std::rethrow_exception(error);
        } catch (...) {
            rethrow_at(coordinates(spec, i1, i2));
        }
    }
    return map;
}

void normalize_columns(MapResult& map, std::size_t column) {
    const std::size_t n2 = map.n2();
    auto& v = map.values.at(column);
    for (std::size_t i1 = 0; i1 < map.n1(); ++i1) {
        const auto first = v.begin() + static_cast<std::ptrdiff_t>(i1 * n2);
        const double m = median(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n2)));
        if (m == 0.0) continue;
        std::transform(first, first + static_cast<std::ptrdiff_t>(n2), first, [m](double x) { return x / m; });
    }
    map.normalization = Normalization::column;
}

Overlay splitting_overlay(const OperatingPoint& op, const Axis& bias_axis) {
    Overlay o{"rabi_splitting_ghz", bias_axis.values, {}};
    for (double eps : bias_axis.values) {
        OperatingPoint p = op;
        p.bias = EnergyBias{Frequency::ghz(eps)};
        o.y.push_back(compute_shift(p.qubit, p.bias, p.tones.drive).rabi_splitting.ghz());
    }
    return o;
}

MapResult spectroscopy_map(const SweepSpec& spec, Normalization norm, unsigned threads) {
    if (spec.axis1.parameter != SweepParameter::energy_bias || !spec.axis2 ||
        spec.axis2->parameter != SweepParameter::spectroscopy_frequency)
        throw InvalidParameter("spectroscopy map sweeps energy bias (axis1) and spectroscopy frequency (axis2)");
    SweepSpec s = spec;
    s.quantity = Quantity::t_abs;
    MapResult map = evaluate(s, threads);
    if (norm == Normalization::column) normalize_columns(map);
    map.overlays.push_back(splitting_overlay(spec.fixed, spec.axis1));
    map.attributes["drive_amplitude_ghz"] = spec.fixed.tones.drive.amplitude.ghz();
    return map;
}

std::vector<MapResult> bias_trace_amplitudes(const SweepSpec& spec, const std::vector<Frequency>& amplitudes,
                                             unsigned threads) {
    if (spec.axis1.parameter != SweepParameter::energy_bias || spec.axis2)
        throw InvalidParameter("bias trace sweeps energy bias only");
    std::vector<MapResult> out;
    for (Frequency amp : amplitudes) {
        SweepSpec s = spec;
        s.quantity = Quantity::t_abs;
        s.fixed.tones.drive.amplitude = amp;
        s.fixed.tones.spectroscopy.amplitude = Frequency{};
        MapResult m = evaluate(s, threads);
        m.attributes["drive_amplitude_ghz"] = amp.ghz();
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<MapResult> bias_trace(const SweepSpec& spec, const std::vector<double>& powers_dbm,
                                  const DeviceGeometry& geometry, unsigned threads) {
    std::vector<Frequency> amps;
    for (double p : powers_dbm)
        amps.push_back(drive_from_power(p, spec.fixed.tones.drive.frequency, geometry, spec.fixed.resonator));
    auto traces = bias_trace_amplitudes(spec, amps, threads);
    for (std::size_t i = 0; i < traces.size(); ++i) traces[i].attributes["drive_power_dbm"] = powers_dbm[i];
    return traces;
}

MapResult level_diagram(const SweepSpec& spec, const std::vector<Frequency>& drive_amplitudes, unsigned threads) {
    if (spec.axis1.parameter != SweepParameter::energy_bias)
        throw InvalidParameter("level diagram sweeps energy bias");
    SweepSpec s = spec;
    s.quantity = Quantity::levels;
    Axis amps{SweepParameter::drive_amplitude, {}};
    for (Frequency a : drive_amplitudes) amps.values.push_back(a.ghz());
    s.axis2 = amps;
    return evaluate(s, threads);
}

Frequency extract_min_gap(const MapResult& map, std::size_t column) {
    if (!map.axis2 || map.n2() < 3) throw InvalidParameter("gap extraction needs a 2-D map with >= 3 rows");
    const std::size_t n1 = map.n1();
    const std::size_t n2 = map.n2();
    const auto& v = map.values.at(column);

    std::vector<double> dev(v.size());
    std::vector<double> medians(n1);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        const auto first = v.begin() + static_cast<std::ptrdiff_t>(i1 * n2);
        medians[i1] = median(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n2)));
        for (std::size_t i2 = 0; i2 < n2; ++i2) dev[i1 * n2 + i2] = std::abs(v[i1 * n2 + i2] - medians[i1]);
    }
    const double floor = median(dev);
    const double step = map.axis2->step();

    std::optional<double> best;
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        const auto first = dev.begin() + static_cast<std::ptrdiff_t>(i1 * n2);
        const std::size_t j = static_cast<std::size_t>(std::max_element(first, first + static_cast<std::ptrdiff_t>(n2)) - first);
        if (j == 0 || j + 1 == n2) continue;  // rising into the edge is not a located feature
        const double feature = dev[i1 * n2 + j];
        if (!(feature > 3.0 * floor) || !(feature > 1e-12)) continue;
        const double pos = map.axis2->values[j] +
                           step * parabolic_offset(dev[i1 * n2 + j - 1], feature, dev[i1 * n2 + j + 1]);
        if (!best || pos < *best) best = pos;
    }
    if (!best) throw RidgeNotFound("no column has a spectroscopic feature above 3x the noise floor");
    return Frequency::ghz(*best);
}

std::vector<Dip> find_dips(const std::vector<double>& x, const std::vector<double>& y, double min_prominence) {
    if (x.size() != y.size()) throw InvalidParameter("dip search needs equally long x and y");
    std::vector<Dip> dips;
    const std::size_t n = y.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] < y[i - 1] && y[i] <= y[i + 1])) continue;
        double left = y[i];
        for (std::size_t k = i; k-- > 0 && y[k] >= y[i];) left = std::max(left, y[k]);
        double right = y[i];
        for (std::size_t k = i + 1; k < n && y[k] >= y[i]; ++k) right = std::max(right, y[k]);
        const double prominence = std::min(left, right) - y[i];
        if (prominence <= min_prominence) continue;
        const double pos = x[i] + (x[i + 1] - x[i]) * parabolic_offset(y[i - 1], y[i], y[i + 1]);
        dips.push_back({pos, prominence, i});
    }
    return dips;
}

Frequency dip_splitting_threshold(const OperatingPoint& op, Frequency max_amplitude) {
    OperatingPoint p = op;
    p.bias = EnergyBias{};
    auto excess = [&](double amp_ghz) {
        p.tones.drive.amplitude = Frequency::ghz(amp_ghz);
        return (compute_shift(p.qubit, p.bias, p.tones.drive).rabi_splitting - p.resonator.fundamental).ghz();
    };
    double lo = 0.0;
    if (!(excess(lo) > 0)) throw InvalidParameter("bare splitting at zero bias is already below the resonator");
    // Omega_R(0) = |omega_q + omega_ac| turns back up once the shift exceeds
    // omega_q, so walk up to the first crossing before bisecting.
    constexpr int kScan = 1000;
    double hi = lo;
    for (int i = 1; i <= kScan; ++i) {
        const double a = max_amplitude.ghz() * i / kScan;
        if (!(excess(a) > 0)) {
            hi = a;
            break;
        }
        lo = a;
    }
    if (hi == 0.0) throw InvalidParameter("no dip-splitting threshold below the maximum amplitude");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0 ? lo : hi) = mid;
    }
    return Frequency::ghz(0.5 * (lo + hi));
}

std::vector<double> resonance_biases(const OperatingPoint& op, double lo_ghz, double hi_ghz) {
    OperatingPoint p = op;
    auto f = [&](double eps) {
        p.bias = EnergyBias{Frequency::ghz(eps)};
        return (compute_shift(p.qubit, p.bias, p.tones.drive).rabi_splitting - p.resonator.fundamental).ghz();
    };
    constexpr int kScan = 4000;
    std::vector<double> roots;
    double x0 = lo_ghz;
    double f0 = f(x0);
    for (int i = 1; i <= kScan; ++i) {
        const double x1 = lo_ghz + (hi_ghz - lo_ghz) * i / kScan;
        const double f1 = f(x1);
        if (f0 == 0.0) roots.push_back(x0);
        else if (f0 * f1 < 0) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace acshift
