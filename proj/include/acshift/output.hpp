#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "acshift/config.hpp"
#include "acshift/sweep.hpp"

namespace acshift {

/// 9 significant digits, scientific notation.
std::string format_number(double v);

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Header row, comma separated, LF line endings. Text cells containing a comma
/// or quote are quoted.
std::string csv_text(const Table& t);

/// axis1[, axis2], value columns; one row per grid point in index order.
Table map_table(const MapResult& m);

/// 1-D traces stacked along a second column, e.g. one trace per drive power.
Table stacked_table(const std::vector<MapResult>& traces, const std::string& stack_column,
                    const std::vector<double>& stack_values);

/// Unit of a column, from its suffix (_ghz, _mhz, _dbm); "1" otherwise.
std::string column_unit(const std::string& column);

/// JSON sidecar: command, columns with units, normalization, the resolved
/// config, overlays and any extra results. Contains no timestamps.
nlohmann::ordered_json sidecar(const std::string& command, const RunConfig& cfg, const Table& table,
                               Normalization normalization, const std::vector<Overlay>& overlays,
                               const nlohmann::ordered_json& results);

/// Writes `<dir>/<stem>.csv` and `<dir>/<stem>.json`, creating `dir`.
void write_outputs(const std::string& dir, const std::string& stem, const Table& table,
                   const nlohmann::ordered_json& side);

}  // namespace acshift
