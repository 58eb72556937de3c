#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "acshift/errors.hpp"
#include "acshift/output.hpp"
#include "support.hpp"

using namespace acshift;
using doctest::Approx;
using nlohmann::ordered_json;

namespace {

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig random_config(testing::Gen& gen) {
    RunConfig c;
    c.gap_ghz = gen.uniform(1.0, 5.0);
    c.persistent_current_na = gen.uniform(50.0, 300.0);
    if (gen.coin()) {
        c.energy_bias_ghz.reset();
        c.external_flux_phi0 = gen.uniform(0.49, 0.51);
    } else {
        c.energy_bias_ghz = gen.uniform(-6.0, 6.0);
    }
    c.fundamental_ghz = gen.uniform(1.0, 4.0);
    c.quality_factor = gen.uniform(1e3, 1e6);
    c.coupling_mhz = gen.uniform(0.0, 10.0);
    c.relaxation_mhz = gen.uniform(0.1, 30.0);
    c.pure_dephasing_mhz = gen.uniform(0.0, 30.0);
    if (gen.coin()) c.probe_ghz = gen.uniform(1.0, 4.0);
    if (gen.coin()) c.probe_amplitude_mhz = gen.uniform(0.0, 1.0);
    if (gen.coin()) c.drive_ghz = gen.uniform(5.0, 10.0);
    c.drive_amplitude_ghz = gen.uniform(0.0, 1.0);
    if (gen.coin()) c.spectroscopy_amplitude_mhz = gen.uniform(0.0, 10.0);
    c.photon_number = gen.uniform(0.0, 10.0);
    c.correction_order = static_cast<OrderSetting>(gen.integer(0, 2));
    c.photon_mode = gen.coin() ? PhotonMode::fixed_n : PhotonMode::self_consistent;
    c.normalization = gen.coin() ? Normalization::column : Normalization::none;
    if (gen.coin()) c.drive_mode_decay_mhz = gen.uniform(0.01, 1.0);
    if (gen.coin()) c.calibration_reference = CalibrationReference{gen.uniform(-40.0, 0.0), gen.uniform(0.1, 3.0)};
    c.bias_axis = {gen.uniform(-8.0, -1.0), gen.uniform(1.0, 8.0), gen.integer(2, 400)};
    c.drive_amplitudes_ghz = {gen.uniform(0.0, 1.0), gen.uniform(1.0, 3.0)};
    if (gen.coin()) c.drive_powers_dbm = {gen.uniform(-50.0, 0.0)};
    c.oracle.check = gen.coin() ? "shift" : "all";
    c.oracle.fock_dim = gen.integer(3, 10);
    if (gen.coin()) c.oracle.expansion_ratio = gen.uniform(0.01, 0.2);
    return c;
}

}  // namespace

TEST_CASE("empty config gives the device defaults") {
    const RunConfig c = parse_config("{}");
    CHECK(c == RunConfig{});
    const OperatingPoint op = c.operating_point();
    CHECK(op.qubit.gap.ghz() == Approx(2.97));
    CHECK(op.resonator.fundamental.ghz() == Approx(2.59));
    CHECK(op.tones.drive.frequency.ghz() == Approx(7.77));
    CHECK(op.tones.probe.frequency == op.resonator.fundamental);
    CHECK(op.photon_number == 5.0);
    CHECK(op.rates.relaxation.mhz() == Approx(10.0));
}

TEST_CASE("config sections") {
    const RunConfig c = parse_config(R"({
        "qubit": {"gap_ghz": 3.1},
        "bias": {"external_flux_phi0": 0.499},
        "tones": {"drive_amplitude_ghz": 1.5, "spectroscopy_amplitude_mhz": 2},
        "model": {"correction_order": "split-at-zero-bias", "photon_mode": "self-consistent",
                  "normalization": "none"},
        "geometry": {"reference_power_dbm": -10, "reference_amplitude_ghz": 2},
        "sweep": {"bias_ghz": {"start": -1, "stop": 1, "points": 11}, "drive_powers_dbm": [-20, -10]}
    })");
    CHECK(c.gap_ghz == 3.1);
    CHECK(c.external_flux_phi0 == 0.499);
    CHECK(c.order_policy() == OrderPolicy::split_at_zero_bias);
    CHECK(c.photon_mode == PhotonMode::self_consistent);
    CHECK(c.normalization == Normalization::none);
    REQUIRE(c.calibration_reference);
    CHECK(c.calibration_reference->power_dbm == -10.0);
    CHECK(c.bias_axis.points == 11);
    CHECK(c.drive_powers_dbm.size() == 2);
    CHECK(c.operating_point().tones.spectroscopy.amplitude.mhz() == Approx(2.0));
}

TEST_CASE("config strictness") {
    CHECK(config_error(R"({"tones": {"bad": 1}})").find("tones.bad") != std::string::npos);
    CHECK(config_error(R"({"nope": {}})").find("nope") != std::string::npos);
    CHECK(config_error(R"({"qubit": {"gap_ghz": "big"}})").find("qubit.gap_ghz") != std::string::npos);
    CHECK(config_error(R"({"model": {"correction_order": "third"}})").find("model.correction_order") !=
          std::string::npos);
    CHECK(config_error(R"({"geometry": {"reference_power_dbm": -10}})").find("reference") != std::string::npos);
    CHECK(config_error(R"({"bias": {"energy_bias_ghz": 1, "external_flux_phi0": 0.5}})") != "");
    CHECK(config_error(R"({"qubit": {"gap_ghz": -1}})") != "");
    CHECK(config_error(R"({"sweep": {"bias_ghz": {"start": 0, "stop": 1, "points": 1}}})") != "");
    CHECK(config_error("[1, 2]") != "");

    const std::string syntax = config_error("{\n  \"qubit\": {\n    \"gap_ghz\": 2.9,,\n  }\n}");
    CHECK(syntax.find("line 3") != std::string::npos);

    CHECK_THROWS_AS(load_config("/nonexistent/acshift.json"), ConfigError);
}

TEST_CASE("config round trip") {
    const RunConfig d;
    CHECK(parse_config(to_json(d).dump()) == d);

    testing::Gen gen(51);
    for (int i = 0; i < testing::kCases; ++i) {
        const RunConfig c = random_config(gen);
        const std::string text = to_json(c).dump(2);
        const RunConfig back = parse_config(text);
        CHECK(back == c);
        CHECK(to_json(back).dump(2) == text);
        CHECK(back.gap_ghz == c.gap_ghz);  // bit-exact
    }
}

TEST_CASE("number and csv formatting") {
    CHECK(format_number(2.97) == "2.97000000e+00");
    CHECK(format_number(-0.0576117318435754) == "-5.76117318e-02");
    CHECK(format_number(0.0) == "0.00000000e+00");
    CHECK(format_number(-0.0) == "0.00000000e+00");

    const Table t{{"a_ghz", "label"}, {{1.0, std::string("x,y")}, {2.5, std::string("say \"hi\"")}}};
    const std::string csv = csv_text(t);
    CHECK(csv == "a_ghz,label\n1.00000000e+00,\"x,y\"\n2.50000000e+00,\"say \"\"hi\"\"\"\n");
    CHECK(csv.find('\r') == std::string::npos);

    CHECK(column_unit("energy_bias_ghz") == "GHz");
    CHECK(column_unit("relaxation_mhz") == "MHz");
    CHECK(column_unit("drive_power_dbm") == "dBm");
    CHECK(column_unit("arg_t") == "rad");
    CHECK(column_unit("abs_t") == "1");
}

TEST_CASE("map tables and sidecars") {
    SweepSpec s;
    s.axis1 = Axis::linspace(SweepParameter::energy_bias, -1.0, 1.0, 3);
    s.axis2 = Axis::linspace(SweepParameter::spectroscopy_frequency, 2.0, 4.0, 2);
    s.fixed = testing::device_point();
    s.fixed.tones.spectroscopy.amplitude = Frequency::mhz(1.0);
    const MapResult m = spectroscopy_map(s, Normalization::column);
    const Table t = map_table(m);
    REQUIRE(t.header == std::vector<std::string>{"energy_bias_ghz", "spectroscopy_ghz", "abs_t"});
    REQUIRE(t.rows.size() == 6);
    CHECK(std::get<double>(t.rows[3][0]) == 0.0);
    CHECK(std::get<double>(t.rows[3][1]) == 4.0);
    CHECK(std::get<double>(t.rows[3][2]) == m.at(1, 1));

    const RunConfig cfg;
    const ordered_json side = sidecar("spectroscopy", cfg, t, m.normalization, m.overlays, {{"k", 1}});
    CHECK(side["format"] == "acshift-output/1");
    CHECK(side["command"] == "spectroscopy");
    CHECK(side["normalization"] == "column-median");
    CHECK(side["columns"][0]["name"] == "energy_bias_ghz");
    CHECK(side["columns"][0]["unit"] == "GHz");
    CHECK(side["columns"][2]["unit"] == "1");
    CHECK(side["rows"] == 6);
    CHECK(side["overlays"][0]["name"] == "rabi_splitting_ghz");
    CHECK(side["overlays"][0]["x"].size() == 3);
    CHECK(side["results"]["k"] == 1);
    CHECK(parse_config(side["config"].dump()) == cfg);

    const auto dir = testing::scratch_dir("outputs");
    write_outputs((dir / "nested").string(), "map", t, side);
    const std::string csv = slurp(dir / "nested" / "map.csv");
    const std::string json = slurp(dir / "nested" / "map.json");
    CHECK(csv == csv_text(t));
    CHECK(ordered_json::parse(json) == side);
    write_outputs((dir / "nested").string(), "map", t, side);
    CHECK(slurp(dir / "nested" / "map.csv") == csv);
    CHECK(slurp(dir / "nested" / "map.json") == json);

    SweepSpec line = s;
    line.axis2.reset();
    const MapResult trace = evaluate(line);
    const Table stacked = stacked_table({trace, trace}, "drive_power_dbm", {-20.0, -10.0});
    CHECK(stacked.header == std::vector<std::string>{"energy_bias_ghz", "drive_power_dbm", "abs_t"});
    REQUIRE(stacked.rows.size() == 6);
    CHECK(std::get<double>(stacked.rows[4][1]) == -10.0);
    CHECK_THROWS_AS(stacked_table({trace}, "drive_power_dbm", {-20.0, -10.0}), InvalidParameter);
}
