#include "acshift/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "acshift/errors.hpp"

namespace acshift {

using nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_number(*d);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string csv_text(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
    }
    return out;
}

Table map_table(const MapResult& m) {
    Table t;
    t.header.push_back(parameter_name(m.axis1.parameter));
    if (m.axis2) t.header.push_back(parameter_name(m.axis2->parameter));
    t.header.insert(t.header.end(), m.columns.begin(), m.columns.end());
    for (std::size_t i1 = 0; i1 < m.n1(); ++i1)
        for (std::size_t i2 = 0; i2 < m.n2(); ++i2) {
            std::vector<Cell> row{m.axis1.values[i1]};
            if (m.axis2) row.emplace_back(m.axis2->values[i2]);
            for (std::size_t c = 0; c < m.columns.size(); ++c) row.emplace_back(m.at(i1, i2, c));
            t.rows.push_back(std::move(row));
        }
    return t;
}

Table stacked_table(const std::vector<MapResult>& traces, const std::string& stack_column,
                    const std::vector<double>& stack_values) {
    if (traces.size() != stack_values.size()) throw InvalidParameter("one stack value per trace required");
    Table t;
    if (traces.empty()) return t;
    t.header = {parameter_name(traces.front().axis1.parameter), stack_column};
    t.header.insert(t.header.end(), traces.front().columns.begin(), traces.front().columns.end());
    for (std::size_t k = 0; k < traces.size(); ++k) {
        const auto& m = traces[k];
        for (std::size_t i = 0; i < m.n1(); ++i) {
            std::vector<Cell> row{m.axis1.values[i], stack_values[k]};
            for (std::size_t c = 0; c < m.columns.size(); ++c) row.emplace_back(m.at(i, 0, c));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

std::string column_unit(const std::string& column) {
    auto ends = [&](const std::string& suffix) {
        return column.size() >= suffix.size() && column.compare(column.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends("_ghz")) return "GHz";
    if (ends("_mhz")) return "MHz";
    if (ends("_dbm")) return "dBm";
    if (ends("arg_t")) return "rad";
    return "1";
}

ordered_json sidecar(const std::string& command, const RunConfig& cfg, const Table& table,
                     Normalization normalization, const std::vector<Overlay>& overlays,
                     const ordered_json& results) {
    ordered_json j;
    j["format"] = "acshift-output/1";
    j["command"] = command;
    ordered_json cols = ordered_json::array();
    for (const auto& h : table.header) cols.push_back({{"name", h}, {"unit", column_unit(h)}});
    j["columns"] = cols;
    j["rows"] = table.rows.size();
    j["normalization"] = normalization == Normalization::column ? "column-median" : "none";
    j["frequency_convention"] = "ordinary frequency omega/2pi; rates are Gamma/2pi";
    ordered_json ov = ordered_json::array();
    for (const auto& o : overlays) ov.push_back({{"name", o.name}, {"x", o.x}, {"y", o.y}});
    j["overlays"] = ov;
    j["results"] = results.is_null() ? ordered_json::object() : results;
    j["config"] = to_json(cfg);
    return j;
}

void write_outputs(const std::string& dir, const std::string& stem, const Table& table,
                   const ordered_json& side) {
    std::filesystem::path d(dir.empty() ? "." : dir);
    std::error_code ec;
    std::filesystem::create_directories(d, ec);
    if (ec) throw Error("cannot create output directory '" + d.string() + "': " + ec.message());
    write_file(d / (stem + ".csv"), csv_text(table));
    write_file(d / (stem + ".json"), side.dump(2) + "\n");
}

}  // namespace acshift
