#include "acshift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "acshift/config.hpp"
#include "acshift/errors.hpp"
#include "acshift/oracle/checks.hpp"
#include "acshift/output.hpp"
#include "acshift/sweep.hpp"

namespace acshift {

using nlohmann::ordered_json;

namespace {

struct Options {
    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 0;
    std::string order;
    std::string normalize;
    std::string mode;
    std::string check;
};

unsigned env_threads() {
    const char* v = std::getenv(threads_env);
    if (!v || !*v) return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 0) throw ConfigError(std::string(threads_env) + " must be a non-negative integer");
    return static_cast<unsigned>(n);
}

RunConfig resolve(const Options& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.order == "1") cfg.correction_order = OrderSetting::first;
    if (o.order == "2") cfg.correction_order = OrderSetting::second;
    if (o.normalize == "column") cfg.normalization = Normalization::column;
    if (o.normalize == "none") cfg.normalization = Normalization::none;
    if (o.mode == "fixed-n") cfg.photon_mode = PhotonMode::fixed_n;
    if (o.mode == "self-consistent") cfg.photon_mode = PhotonMode::self_consistent;
    if (!o.check.empty()) cfg.oracle.check = o.check;
    cfg.validate();
    return cfg;
}

OperatingPoint point_for(const RunConfig& cfg, double default_spectroscopy_mhz) {
    OperatingPoint op = cfg.operating_point();
    op.tones.spectroscopy.amplitude = Frequency::mhz(cfg.spectroscopy_amplitude_mhz.value_or(default_spectroscopy_mhz));
    return op;
}

SweepSpec bias_spec(const RunConfig& cfg, const OperatingPoint& op, const AxisRange& bias) {
    SweepSpec s;
    s.axis1 = bias.to_axis(SweepParameter::energy_bias);
    s.fixed = op;
    s.order_policy = cfg.order_policy();
    s.geometry = cfg.geometry();
    return s;
}

std::vector<Frequency> amplitudes_ghz(const std::vector<double>& v) {
    std::vector<Frequency> out;
    for (double a : v) out.push_back(Frequency::ghz(a));
    return out;
}

void print_table(std::ostream& out, const Table& t) {
    std::vector<std::size_t> width(t.header.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
    for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (std::size_t i = 0; i < row.size(); ++i) {
            r.push_back(std::holds_alternative<double>(row[i]) ? format_number(std::get<double>(row[i]))
                                                              : std::get<std::string>(row[i]));
            width[i] = std::max(width[i], r.back().size());
        }
        text.push_back(std::move(r));
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "  " : "") << cells[i];
            if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
        }
        out << '\n';
    };
    line(t.header);
    for (const auto& r : text) line(r);
}

int cmd_levels(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const OperatingPoint op = point_for(cfg, 10.0);
    const MapResult m = level_diagram(bias_spec(cfg, op, cfg.trace_bias_axis), amplitudes_ghz(cfg.drive_amplitudes_ghz), o.threads);
    const Table t = map_table(m);
    ordered_json res{{"spectroscopy_amplitude_mhz", op.tones.spectroscopy.amplitude.mhz()}};
    write_outputs(o.out_dir, "levels", t, sidecar("levels", cfg, t, Normalization::none, {}, res));
    out << "levels: " << t.rows.size() << " rows written to " << o.out_dir << "/levels.csv\n";
    return 0;
}

int cmd_spectroscopy(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const OperatingPoint op = point_for(cfg, 1.0);
    SweepSpec spec = bias_spec(cfg, op, cfg.bias_axis);
    spec.axis2 = cfg.spectroscopy_axis.to_axis(SweepParameter::spectroscopy_frequency);
    const MapResult m = spectroscopy_map(spec, cfg.normalization, o.threads);
    const Table t = map_table(m);

    ordered_json res{{"drive_amplitude_ghz", op.tones.drive.amplitude.ghz()},
                     {"spectroscopy_amplitude_mhz", op.tones.spectroscopy.amplitude.mhz()}};
    const auto& overlay = m.overlays.front().y;
    res["analytic_min_splitting_ghz"] = *std::min_element(overlay.begin(), overlay.end());
    try {
        const Frequency gap = extract_min_gap(m);
        res["extracted_min_gap_ghz"] = gap.ghz();
        out << "extracted minimum gap: " << format_number(gap.ghz()) << " GHz\n";
    } catch (const RidgeNotFound& e) {
        res["extracted_min_gap_ghz"] = nullptr;
        out << "extracted minimum gap: none (" << e.what() << ")\n";
    }
    write_outputs(o.out_dir, "spectroscopy", t, sidecar("spectroscopy", cfg, t, m.normalization, m.overlays, res));
    out << "spectroscopy: " << t.rows.size() << " rows written to " << o.out_dir << "/spectroscopy.csv\n";
    return 0;
}

int cmd_biastrace(const Options& o, const RunConfig& cfg, std::ostream& out) {
    OperatingPoint op = point_for(cfg, 0.0);
    const SweepSpec spec = bias_spec(cfg, op, cfg.trace_bias_axis);
    const bool by_power = !cfg.drive_powers_dbm.empty();
    const auto traces = by_power ? bias_trace(spec, cfg.drive_powers_dbm, cfg.geometry(), o.threads)
                                 : bias_trace_amplitudes(spec, amplitudes_ghz(cfg.drive_amplitudes_ghz), o.threads);
    const Table t = by_power ? stacked_table(traces, "drive_power_dbm", cfg.drive_powers_dbm)
                             : stacked_table(traces, "drive_amplitude_ghz", cfg.drive_amplitudes_ghz);

    ordered_json res;
    try {
        res["threshold_amplitude_ghz"] = dip_splitting_threshold(op).ghz();
    } catch (const InvalidParameter&) {
        res["threshold_amplitude_ghz"] = nullptr;
    }
    ordered_json list = ordered_json::array();
    for (const auto& tr : traces) {
        ordered_json e;
        for (const auto& [k, v] : tr.attributes) e[k] = v;
        ordered_json dips = ordered_json::array();
        for (const auto& d : find_dips(tr.axis1.values, tr.values[0])) dips.push_back(d.position);
        e["dip_biases_ghz"] = dips;
        out << "drive " << format_number(tr.attributes.at("drive_amplitude_ghz")) << " GHz: " << dips.size()
            << " dip(s)\n";
        list.push_back(e);
    }
    res["traces"] = list;
    res["kappa_d_mhz"] = cfg.geometry().kappa_d(op.resonator).mhz();
    res["kappa_d_is_default"] = !cfg.drive_mode_decay_mhz.has_value();
    write_outputs(o.out_dir, "biastrace", t, sidecar("biastrace", cfg, t, Normalization::none, {}, res));
    out << "biastrace: " << t.rows.size() << " rows written to " << o.out_dir << "/biastrace.csv\n";
    return 0;
}

int cmd_calibrate(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const OperatingPoint op = cfg.operating_point();
    DeviceGeometry g = cfg.geometry();
    if (cfg.calibration_reference)
        g.calibration_factor = solve_calibration_factor(cfg.calibration_reference->power_dbm,
                                                        Frequency::ghz(cfg.calibration_reference->amplitude_ghz),
                                                        op.tones.drive.frequency, g, op.resonator);
    std::vector<double> powers = cfg.drive_powers_dbm;
    if (powers.empty())
        for (int p = -40; p <= 10; p += 5) powers.push_back(p);
    Table t{{"drive_power_dbm", "drive_amplitude_ghz"}, {}};
    for (double p : powers) t.rows.push_back({p, drive_from_power(p, op.tones.drive.frequency, g, op.resonator).ghz()});
    ordered_json res{{"calibration_factor", g.calibration_factor},
                     {"kappa_d_mhz", g.kappa_d(op.resonator).mhz()},
                     {"kappa_d_is_default", !cfg.drive_mode_decay_mhz.has_value()},
                     {"g_d_mhz", g.g_d(op.resonator).mhz()},
                     {"drive_ghz", op.tones.drive.frequency.ghz()}};
    write_outputs(o.out_dir, "calibrate", t, sidecar("calibrate", cfg, t, Normalization::none, {}, res));
    print_table(out, t);
    out << "calibration factor: " << format_number(g.calibration_factor) << "\n";
    if (!cfg.calibration_reference)
        out << "note: uncalibrated; set geometry.reference_power_dbm and reference_amplitude_ghz to fit the factor\n";
    return 0;
}

int cmd_shift(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const OperatingPoint op = cfg.operating_point();
    const ShiftResult s = compute_shift(op.qubit, op.bias, op.tones.drive);
    const ModifiedRates r = modified_rates(op.rates, s.bar_drive, s.detuning);
    Table t{{"quantity", "value", "unit"}, {}};
    auto add = [&](const char* name, double v, const char* unit) { t.rows.push_back({std::string(name), v, std::string(unit)}); };
    add("energy_bias", energy_bias(op.qubit, op.bias).ghz(), "GHz");
    add("level_splitting", s.splitting.ghz(), "GHz");
    add("effective_drive", s.bar_drive.ghz(), "GHz");
    add("detuning_minus", s.detuning.minus.ghz(), "GHz");
    add("detuning_plus", s.detuning.plus.ghz(), "GHz");
    add("omega_ac", s.omega_ac.ghz(), "GHz");
    add("omega_ac_with_linewidth",
        ac_shift_exact(s.bar_drive, s.splitting, op.tones.drive.frequency, op.rates.decoherence()).ghz(), "GHz");
    add("rabi_splitting", s.rabi_splitting.ghz(), "GHz");
    add("alpha", s.alpha, "1");
    add("beta", s.beta, "1");
    add("a_factor", s.a_factor, "1");
    add("b_factor", s.b_factor, "1");
    add("c_factor", s.c_factor, "1");
    add("expansion_ratio", s.expansion_ratio, "1");
    add("relaxation_hat", r.relaxation_hat.mhz(), "MHz");
    add("excitation_hat", r.excitation_hat.mhz(), "MHz");
    add("dephasing_hat", r.dephasing_hat.mhz(), "MHz");
    add("decoherence_hat", r.decoherence_hat.mhz(), "MHz");
    if (op.rates.relaxation > Rate{})
        add("offres_population", offres_population(s.bar_drive, s.splitting, op.tones.drive.frequency, op.rates), "1");
    ordered_json res{{"within_validity", s.within_validity()}};
    write_outputs(o.out_dir, "shift", t, sidecar("shift", cfg, t, Normalization::none, {}, res));
    print_table(out, t);
    if (!s.within_validity())
        out << "warning: effective drive / |delta_-| = " << format_number(s.expansion_ratio)
            << " is outside the perturbative regime\n";
    return 0;
}

int cmd_oracle(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const OperatingPoint op = point_for(cfg, 0.0);
    const std::string& which = cfg.oracle.check;
    std::vector<oracle::CheckReport> reports;

    if (which == "population" || which == "all") {
        std::vector<OperatingPoint> pts;
        for (double eps : cfg.oracle.bias_points_ghz) {
            OperatingPoint p = op;
            p.bias = EnergyBias{Frequency::ghz(eps)};
            // without a configured drive the check would be trivial; sit at the
            // edge of the perturbative regime instead
            std::optional<double> ratio = cfg.oracle.expansion_ratio;
            if (!ratio && !(p.tones.drive.amplitude > Frequency{})) ratio = 0.1;
            if (ratio) {
                const double bar = projections(p.qubit, p.bias).bar;
                const Frequency dm = abs(detunings(level_splitting(p.qubit, p.bias), p.tones.drive.frequency).minus);
                p.tones.drive.amplitude = dm * (*ratio / bar);
            }
            pts.push_back(p);
        }
        reports.push_back(oracle::population_check(pts));
    }
    if (which == "shift" || which == "all")
        reports.push_back(oracle::shift_check(op, amplitudes_ghz(cfg.oracle.shift_amplitudes_ghz)));
    if (which == "rates" || which == "all") {
        std::vector<OperatingPoint> pts{op};
        if (!(op.tones.drive.amplitude > Frequency{})) {
            pts.clear();
            for (double a : cfg.oracle.shift_amplitudes_ghz) {
                OperatingPoint p = op;
                p.tones.drive.amplitude = Frequency::ghz(a);
                pts.push_back(p);
            }
        }
        reports.push_back(oracle::rates_check(pts));
    }
    if (which == "transmission" || which == "all")
        reports.push_back(oracle::transmission_check(
            op, oracle::probe_scan_around_resonance(op.resonator, cfg.oracle.probe_span_kappa), cfg.oracle.fock_dim,
            cfg.oracle.rotating_wave_coupling));

    Table t{{"check", "label", "parameter", "analytic", "oracle", "deviation", "bound"}, {}};
    ordered_json res = ordered_json::object();
    for (const auto& rep : reports) {
        for (const auto& r : rep.rows)
            t.rows.push_back({rep.check, r.label, r.parameter, r.analytic, r.oracle, r.deviation, r.bound});
        res[rep.check] = {{"parameter", rep.parameter_name},
                          {"quantity", rep.quantity},
                          {"deviation", rep.deviation_kind},
                          {"max_deviation", rep.max_deviation()},
                          {"within_bounds", rep.within_bounds()}};
    }
    write_outputs(o.out_dir, "oracle_compare", t, sidecar("oracle-compare", cfg, t, Normalization::none, {}, res));
    print_table(out, t);
    for (const auto& rep : reports)
        out << rep.check << ": max " << rep.deviation_kind << " deviation " << format_number(rep.max_deviation())
            << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ac-drive shifted flux-qubit spectroscopy simulator", "acshift"};
    app.require_subcommand(1);
    Options o;
    try {
        o.threads = env_threads();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    const std::vector<std::pair<std::string, std::string>> commands{
        {"levels", "level diagram: +-Omega_R/2 and population over bias, per drive amplitude"},
        {"spectroscopy", "transmission map over bias and spectroscopy frequency"},
        {"biastrace", "transmission over bias for several drive amplitudes or powers"},
        {"calibrate", "input power to drive amplitude table"},
        {"shift", "shift, coupling factors and renormalized rates at one operating point"},
        {"oracle-compare", "analytic results against the master-equation and Floquet oracles"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--threads", o.threads, std::string("worker threads (0: all cores; default from ") + threads_env + ")");
        sub->add_option("--order", o.order, "correction order")->check(CLI::IsMember({"1", "2"}));
        sub->add_option("--normalize", o.normalize, "map normalization")->check(CLI::IsMember({"column", "none"}));
        sub->add_option("--mode", o.mode, "photon number mode")->check(CLI::IsMember({"fixed-n", "self-consistent"}));
        if (name == "oracle-compare")
            sub->add_option("--check", o.check, "which comparison")
                ->check(CLI::IsMember({"population", "shift", "rates", "transmission", "all"}));
        sub->callback([&o, n = name] { o.command = n; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = resolve(o);
        if (o.command == "levels") return cmd_levels(o, cfg, out);
        if (o.command == "spectroscopy") return cmd_spectroscopy(o, cfg, out);
        if (o.command == "biastrace") return cmd_biastrace(o, cfg, out);
        if (o.command == "calibrate") return cmd_calibrate(o, cfg, out);
        if (o.command == "shift") return cmd_shift(o, cfg, out);
        if (o.command == "oracle-compare") return cmd_oracle(o, cfg, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace acshift
