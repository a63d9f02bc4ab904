#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "unicrit/serialize.hpp"

namespace unicrit::cli {

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

// Shortest round-trip decimal form; infinities print as inf/-inf.
std::string format_double(double x);

void write_csv(const Table& table, std::ostream& out);
Json table_to_json(const Table& table);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool log_x = true;
    bool log_y = true;
    std::vector<Series> series;
};

std::string render_svg(const PlotSpec& plot);
std::string render_ascii(const PlotSpec& plot);

// One report document: the JSON envelope plus the tables and the plot the
// other formats are derived from. tables[0] uses the plain basename; extra
// tables get an underscore suffix.
struct Report {
    std::string name;
    Json map_echo;    // degree + parameter, when the report is map-based
    Json params;      // resolved parameters that shaped the report
    Json data;        // report-specific payload
    std::vector<std::pair<std::string, Table>> tables;
    std::optional<PlotSpec> plot;

    Json document() const;
};

// Bundled structural check for emitted documents; nullopt means valid.
std::optional<std::string> schema_error(const Json& doc);

// Writes one file per requested format into dir/basename.*; unknown format
// names are usage errors. Returns the written paths in emission order.
std::vector<std::filesystem::path> emit_report(
    const Report& report, const std::set<std::string>& formats,
    const std::filesystem::path& dir, const std::string& basename);

}  // namespace unicrit::cli
