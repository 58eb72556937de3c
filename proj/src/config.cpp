#include "acshift/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "acshift/errors.hpp"

namespace acshift {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Reads the keys of one JSON object, remembering which were consumed so the
// rest can be rejected.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("", "expected an object");
    }

    bool has(const char* key) const { return j_.contains(key); }

    void number(const char* key, double& out) {
        if (const json* v = take(key)) {
            if (!v->is_number()) fail(key, "expected a number");
            out = v->get<double>();
        }
    }

    void number(const char* key, std::optional<double>& out) {
        if (const json* v = take(key)) {
            if (v->is_null()) out.reset();
            else if (v->is_number()) out = v->get<double>();
            else fail(key, "expected a number or null");
        }
    }

    void integer(const char* key, int& out) {
        if (const json* v = take(key)) {
            if (!v->is_number_integer()) fail(key, "expected an integer");
            out = v->get<int>();
        }
    }

    void boolean(const char* key, bool& out) {
        if (const json* v = take(key)) {
            if (!v->is_boolean()) fail(key, "expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const char* key, std::string& out) {
        if (const json* v = take(key)) {
            if (!v->is_string()) fail(key, "expected a string");
            out = v->get<std::string>();
        }
    }

    void numbers(const char* key, std::vector<double>& out) {
        if (const json* v = take(key)) {
            if (!v->is_array()) fail(key, "expected an array of numbers");
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number()) fail(key, "expected an array of numbers");
                out.push_back(e.get<double>());
            }
        }
    }

    std::optional<Section> section(const char* key) {
        const json* v = take(key);
        if (!v) return std::nullopt;
        return Section(*v, field(key));
    }

    void axis(const char* key, AxisRange& out) {
        if (auto s = section(key)) {
            s->number("start", out.start);
            s->number("stop", out.stop);
            s->integer("points", out.points);
            s->finish();
        }
    }

    template <class Enum>
    void choice(const char* key, Enum& out, std::initializer_list<std::pair<const char*, Enum>> options) {
        std::string name;
        if (!has(key)) return;
        string(key, name);
        for (const auto& [n, e] : options)
            if (name == n) {
                out = e;
                return;
            }
        std::string allowed;
        for (const auto& [n, e] : options) allowed += std::string(allowed.empty() ? "" : ", ") + n;
        fail(key, "must be one of: " + allowed);
    }

    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!used_.count(key)) fail(key, "unknown key");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError("config field '" + field(key) + "': " + what);
    }

private:
    std::string field(const std::string& key) const {
        if (key.empty()) return path_.empty() ? "<root>" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    const json* take(const char* key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        used_.insert(key);
        return &*it;
    }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

const char* order_name(OrderSetting o) {
    switch (o) {
        case OrderSetting::first: return "first";
        case OrderSetting::second: return "second";
        case OrderSetting::split_at_zero_bias: return "split-at-zero-bias";
    }
    return "";
}

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json axis_json(const AxisRange& a) {
    return {{"start", a.start}, {"stop", a.stop}, {"points", a.points}};
}

}  // namespace

void RunConfig::validate() const {
    if (energy_bias_ghz && external_flux_phi0)
        throw ConfigError("config field 'bias': give either energy_bias_ghz or external_flux_phi0, not both");
    if (!energy_bias_ghz && !external_flux_phi0)
        throw ConfigError("config field 'bias': one of energy_bias_ghz or external_flux_phi0 is required");
    if (bias_axis.points < 2 || spectroscopy_axis.points < 2 || trace_bias_axis.points < 2)
        throw ConfigError("config field 'sweep': axes need at least 2 points");
    if (oracle.fock_dim < 2) throw ConfigError("config field 'oracle.fock_dim': must be at least 2");
    if (oracle.probe_span_kappa < 1) throw ConfigError("config field 'oracle.probe_span_kappa': must be positive");
    static const std::set<std::string> checks{"population", "shift", "rates", "transmission", "all"};
    if (!checks.count(oracle.check))
        throw ConfigError("config field 'oracle.check': must be one of population, shift, rates, transmission, all");
    try {
        operating_point().validate();
        geometry().validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
}

OperatingPoint RunConfig::operating_point() const {
    OperatingPoint op;
    op.qubit = {Frequency::ghz(gap_ghz), persistent_current_na};
    if (external_flux_phi0)
        op.bias = ExternalFlux{*external_flux_phi0};
    else
        op.bias = EnergyBias{Frequency::ghz(energy_bias_ghz.value_or(0.0))};
    op.resonator = {Frequency::ghz(fundamental_ghz), quality_factor, Frequency::mhz(coupling_mhz), drive_harmonic};
    op.rates = {Frequency::mhz(relaxation_mhz), Frequency::mhz(pure_dephasing_mhz)};
    op.tones.probe = {Frequency::mhz(probe_amplitude_mhz.value_or(0.0)),
                      Frequency::ghz(probe_ghz.value_or(fundamental_ghz)), ToneRole::probe};
    op.tones.drive = {Frequency::ghz(drive_amplitude_ghz),
                      Frequency::ghz(drive_ghz.value_or(fundamental_ghz * drive_harmonic)), ToneRole::drive};
    op.tones.spectroscopy = {Frequency::mhz(spectroscopy_amplitude_mhz.value_or(0.0)), Frequency::ghz(spectroscopy_ghz),
                             ToneRole::spectroscopy};
    op.photon_number = photon_number;
    op.correction_order = correction_order == OrderSetting::first ? CorrectionOrder::first : CorrectionOrder::second;
    op.photon_mode = photon_mode;
    op.probe_source = probe_amplitude_mhz ? ProbeSource::explicit_amplitude : ProbeSource::photon_number;
    return op;
}

DeviceGeometry RunConfig::geometry() const {
    DeviceGeometry g;
    g.coupling_capacitance_ff = coupling_capacitance_ff;
    g.resonator_capacitance_pf = resonator_capacitance_pf;
    g.line_impedance_ohm = line_impedance_ohm;
    if (drive_mode_decay_mhz) g.drive_mode_decay = Frequency::mhz(*drive_mode_decay_mhz);
    if (drive_coupling_mhz) g.drive_coupling = Frequency::mhz(*drive_coupling_mhz);
    g.calibration_factor = calibration_factor;
    return g;
}

OrderPolicy RunConfig::order_policy() const {
    return correction_order == OrderSetting::split_at_zero_bias ? OrderPolicy::split_at_zero_bias
                                                                : OrderPolicy::uniform;
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.what() carries the line and column of the syntax error.
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig c;
    Section top(root, "");
    if (auto s = top.section("qubit")) {
        s->number("gap_ghz", c.gap_ghz);
        s->number("persistent_current_na", c.persistent_current_na);
        s->finish();
    }
    if (auto s = top.section("bias")) {
        if (s->has("energy_bias_ghz") || s->has("external_flux_phi0")) {
            c.energy_bias_ghz.reset();
            s->number("energy_bias_ghz", c.energy_bias_ghz);
            s->number("external_flux_phi0", c.external_flux_phi0);
        }
        s->finish();
    }
    if (auto s = top.section("resonator")) {
        s->number("fundamental_ghz", c.fundamental_ghz);
        s->number("quality_factor", c.quality_factor);
        s->number("coupling_mhz", c.coupling_mhz);
        s->integer("drive_harmonic", c.drive_harmonic);
        s->finish();
    }
    if (auto s = top.section("rates")) {
        s->number("relaxation_mhz", c.relaxation_mhz);
        s->number("pure_dephasing_mhz", c.pure_dephasing_mhz);
        s->finish();
    }
    if (auto s = top.section("tones")) {
        s->number("probe_ghz", c.probe_ghz);
        s->number("probe_amplitude_mhz", c.probe_amplitude_mhz);
        s->number("drive_ghz", c.drive_ghz);
        s->number("drive_amplitude_ghz", c.drive_amplitude_ghz);
        s->number("spectroscopy_ghz", c.spectroscopy_ghz);
        s->number("spectroscopy_amplitude_mhz", c.spectroscopy_amplitude_mhz);
        s->finish();
    }
    if (auto s = top.section("model")) {
        s->number("photon_number", c.photon_number);
        s->choice("correction_order", c.correction_order,
                  {{"first", OrderSetting::first},
                   {"second", OrderSetting::second},
                   {"split-at-zero-bias", OrderSetting::split_at_zero_bias}});
        s->choice("photon_mode", c.photon_mode,
                  {{"fixed-n", PhotonMode::fixed_n}, {"self-consistent", PhotonMode::self_consistent}});
        s->choice("normalization", c.normalization,
                  {{"column", Normalization::column}, {"none", Normalization::none}});
        s->finish();
    }
    if (auto s = top.section("geometry")) {
        s->number("coupling_capacitance_ff", c.coupling_capacitance_ff);
        s->number("resonator_capacitance_pf", c.resonator_capacitance_pf);
        s->number("line_impedance_ohm", c.line_impedance_ohm);
        s->number("drive_mode_decay_mhz", c.drive_mode_decay_mhz);
        s->number("drive_coupling_mhz", c.drive_coupling_mhz);
        s->number("calibration_factor", c.calibration_factor);
        std::optional<double> ref_p, ref_a;
        s->number("reference_power_dbm", ref_p);
        s->number("reference_amplitude_ghz", ref_a);
        if (ref_p.has_value() != ref_a.has_value())
            s->fail("reference_power_dbm", "reference_power_dbm and reference_amplitude_ghz go together");
        if (ref_p) c.calibration_reference = CalibrationReference{*ref_p, *ref_a};
        s->finish();
    }
    if (auto s = top.section("sweep")) {
        s->axis("bias_ghz", c.bias_axis);
        s->axis("spectroscopy_ghz", c.spectroscopy_axis);
        s->axis("trace_bias_ghz", c.trace_bias_axis);
        s->numbers("drive_amplitudes_ghz", c.drive_amplitudes_ghz);
        s->numbers("drive_powers_dbm", c.drive_powers_dbm);
        s->finish();
    }
    if (auto s = top.section("oracle")) {
        auto& o = c.oracle;
        s->string("check", o.check);
        s->integer("fock_dim", o.fock_dim);
        s->numbers("bias_points_ghz", o.bias_points_ghz);
        s->number("expansion_ratio", o.expansion_ratio);
        s->numbers("shift_amplitudes_ghz", o.shift_amplitudes_ghz);
        s->integer("probe_span_kappa", o.probe_span_kappa);
        s->boolean("rotating_wave_coupling", o.rotating_wave_coupling);
        s->finish();
    }
    top.finish();
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["qubit"] = {{"gap_ghz", c.gap_ghz}, {"persistent_current_na", c.persistent_current_na}};
    if (c.external_flux_phi0)
        j["bias"] = {{"external_flux_phi0", *c.external_flux_phi0}};
    else
        j["bias"] = {{"energy_bias_ghz", c.energy_bias_ghz.value_or(0.0)}};
    j["resonator"] = {{"fundamental_ghz", c.fundamental_ghz},
                      {"quality_factor", c.quality_factor},
                      {"coupling_mhz", c.coupling_mhz},
                      {"drive_harmonic", c.drive_harmonic}};
    j["rates"] = {{"relaxation_mhz", c.relaxation_mhz}, {"pure_dephasing_mhz", c.pure_dephasing_mhz}};
    j["tones"] = {{"probe_ghz", c.probe_ghz.value_or(c.fundamental_ghz)},
                  {"probe_amplitude_mhz", optional_number(c.probe_amplitude_mhz)},
                  {"drive_ghz", c.drive_ghz.value_or(c.fundamental_ghz * c.drive_harmonic)},
                  {"drive_amplitude_ghz", c.drive_amplitude_ghz},
                  {"spectroscopy_ghz", c.spectroscopy_ghz},
                  {"spectroscopy_amplitude_mhz", optional_number(c.spectroscopy_amplitude_mhz)}};
    j["model"] = {{"photon_number", c.photon_number},
                  {"correction_order", order_name(c.correction_order)},
                  {"photon_mode", c.photon_mode == PhotonMode::fixed_n ? "fixed-n" : "self-consistent"},
                  {"normalization", c.normalization == Normalization::column ? "column" : "none"}};
    j["geometry"] = {
        {"coupling_capacitance_ff", c.coupling_capacitance_ff},
        {"resonator_capacitance_pf", c.resonator_capacitance_pf},
        {"line_impedance_ohm", c.line_impedance_ohm},
        {"drive_mode_decay_mhz", optional_number(c.drive_mode_decay_mhz)},
        {"drive_coupling_mhz", optional_number(c.drive_coupling_mhz)},
        {"calibration_factor", c.calibration_factor},
        {"reference_power_dbm",
         c.calibration_reference ? ordered_json(c.calibration_reference->power_dbm) : ordered_json(nullptr)},
        {"reference_amplitude_ghz",
         c.calibration_reference ? ordered_json(c.calibration_reference->amplitude_ghz) : ordered_json(nullptr)}};
    j["sweep"] = {{"bias_ghz", axis_json(c.bias_axis)},
                  {"spectroscopy_ghz", axis_json(c.spectroscopy_axis)},
                  {"trace_bias_ghz", axis_json(c.trace_bias_axis)},
                  {"drive_amplitudes_ghz", c.drive_amplitudes_ghz},
                  {"drive_powers_dbm", c.drive_powers_dbm}};
    const auto& o = c.oracle;
    j["oracle"] = {{"check", o.check},
                   {"fock_dim", o.fock_dim},
                   {"bias_points_ghz", o.bias_points_ghz},
                   {"expansion_ratio", optional_number(o.expansion_ratio)},
                   {"shift_amplitudes_ghz", o.shift_amplitudes_ghz},
                   {"probe_span_kappa", o.probe_span_kappa},
                   {"rotating_wave_coupling", o.rotating_wave_coupling}};
    return j;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return to_json(a) == to_json(b);
}

}  // namespace acshift
