#include "emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "unicrit/errors.hpp"

namespace unicrit::cli {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& cell) {
    if (std::holds_alternative<double>(cell))
        return format_double(std::get<double>(cell));
    if (std::holds_alternative<long long>(cell))
        return std::to_string(std::get<long long>(cell));
    if (std::holds_alternative<bool>(cell))
        return std::get<bool>(cell) ? "true" : "false";
    return std::get<std::string>(cell);
}

Json cell_json(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) {
        const double x = std::get<double>(cell);
        return encode_real(x);
    }
    if (std::holds_alternative<long long>(cell)) return std::get<long long>(cell);
    if (std::holds_alternative<bool>(cell)) return std::get<bool>(cell);
    return std::get<std::string>(cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(table.columns[i]);
    }
    out << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(cell_text(row[i]));
        }
        out << "\r\n";
    }
}

Json table_to_json(const Table& table) {
    Json j;
    j["columns"] = table.columns;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r = Json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

namespace {

// Plot geometry shared by the SVG and ASCII renderers.
struct Frame {
    bool log_x = false;
    bool log_y = false;
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    bool empty = true;
};

double transform(double v, bool log_scale) {
    return log_scale ? std::log10(v) : v;
}

bool usable(double v, bool log_scale) {
    return std::isfinite(v) && (!log_scale || v > 0.0);
}

Frame fit_frame(const PlotSpec& plot) {
    Frame frame;
    // Fall back to linear axes when a log axis cannot represent the data.
    frame.log_x = plot.log_x;
    frame.log_y = plot.log_y;
    auto any_positive = [&](bool take_x) {
        for (const Series& s : plot.series)
            for (double v : (take_x ? s.x : s.y))
                if (std::isfinite(v) && v > 0.0) return true;
        return false;
    };
    if (frame.log_x && !any_positive(true)) frame.log_x = false;
    if (frame.log_y && !any_positive(false)) frame.log_y = false;
    for (const Series& s : plot.series) {
        const std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!usable(s.x[i], frame.log_x) || !usable(s.y[i], frame.log_y))
                continue;
            const double tx = transform(s.x[i], frame.log_x);
            const double ty = transform(s.y[i], frame.log_y);
            if (frame.empty) {
                frame.x_min = frame.x_max = tx;
                frame.y_min = frame.y_max = ty;
                frame.empty = false;
            } else {
                frame.x_min = std::min(frame.x_min, tx);
                frame.x_max = std::max(frame.x_max, tx);
                frame.y_min = std::min(frame.y_min, ty);
                frame.y_max = std::max(frame.y_max, ty);
            }
        }
    }
    if (frame.empty) {
        frame.x_min = frame.y_min = 0.0;
        frame.x_max = frame.y_max = 1.0;
    }
    if (frame.x_max == frame.x_min) {
        frame.x_min -= 0.5;
        frame.x_max += 0.5;
    }
    if (frame.y_max == frame.y_min) {
        frame.y_min -= 0.5;
        frame.y_max += 0.5;
    }
    return frame;
}

std::string round2(double v) {
    return format_double(std::round(v * 100.0) / 100.0);
}

std::string tick_label(double t, bool log_scale) {
    const double v = log_scale ? std::pow(10.0, t) : t;
    char buf[48];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                         std::chars_format::general, 4);
    return std::string(buf, ptr);
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    const Frame frame = fit_frame(plot);
    const double width = 720, height = 480;
    const double left = 76, right = 24, top = 46, bottom = 56;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto sx = [&](double tx) {
        return left + (tx - frame.x_min) / (frame.x_max - frame.x_min) * plot_w;
    };
    auto sy = [&](double ty) {
        return top + (frame.y_max - ty) / (frame.y_max - frame.y_min) * plot_h;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
           "height=\"480\" viewBox=\"0 0 720 480\">\n";
    svg += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"360\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + plot.title +
           "</text>\n";
    svg += "<rect x=\"" + round2(left) + "\" y=\"" + round2(top) + "\" width=\"" +
           round2(plot_w) + "\" height=\"" + round2(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double tx = frame.x_min + (frame.x_max - frame.x_min) * i / ticks;
        const double px = sx(tx);
        svg += "<line x1=\"" + round2(px) + "\" y1=\"" + round2(top + plot_h) +
               "\" x2=\"" + round2(px) + "\" y2=\"" +
               round2(top + plot_h + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + round2(px) + "\" y=\"" + round2(top + plot_h + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">" + tick_label(tx, frame.log_x) + "</text>\n";
        const double ty = frame.y_min + (frame.y_max - frame.y_min) * i / ticks;
        const double py = sy(ty);
        svg += "<line x1=\"" + round2(left - 5) + "\" y1=\"" + round2(py) +
               "\" x2=\"" + round2(left) + "\" y2=\"" + round2(py) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + round2(left - 8) + "\" y=\"" + round2(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">" + tick_label(ty, frame.log_y) + "</text>\n";
    }
    const std::string x_suffix = frame.log_x ? " (log)" : "";
    const std::string y_suffix = frame.log_y ? " (log)" : "";
    svg += "<text x=\"" + round2(left + plot_w / 2) + "\" y=\"" +
           round2(height - 12) + "\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"13\">" + plot.xlabel +
           x_suffix + "</text>\n";
    svg += "<text x=\"18\" y=\"" + round2(top + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 " +
           round2(top + plot_h / 2) + ")\">" + plot.ylabel + y_suffix +
           "</text>\n";

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const Series& series = plot.series[s];
        const char* color = kPalette[s % std::size(kPalette)];
        std::string points;
        const std::size_t n = std::min(series.x.size(), series.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!usable(series.x[i], frame.log_x) ||
                !usable(series.y[i], frame.log_y))
                continue;
            if (!points.empty()) points += ' ';
            points += round2(sx(transform(series.x[i], frame.log_x)));
            points += ',';
            points += round2(sy(transform(series.y[i], frame.log_y)));
        }
        if (!points.empty()) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        }
        const double ly = top + 16 + 16 * static_cast<double>(s);
        svg += "<line x1=\"" + round2(left + plot_w - 130) + "\" y1=\"" +
               round2(ly - 4) + "\" x2=\"" + round2(left + plot_w - 110) +
               "\" y2=\"" + round2(ly - 4) + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + round2(left + plot_w - 104) + "\" y=\"" +
               round2(ly) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
               series.label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_ascii(const PlotSpec& plot) {
    const Frame frame = fit_frame(plot);
    const int cols = 64, rows = 20;
    std::vector<std::string> grid(rows, std::string(cols, ' '));
    const char marks[] = {'*', '+', 'o', 'x', '#', '@'};
    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const Series& series = plot.series[s];
        const char mark = marks[s % std::size(marks)];
        const std::size_t n = std::min(series.x.size(), series.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!usable(series.x[i], frame.log_x) ||
                !usable(series.y[i], frame.log_y))
                continue;
            const double tx = transform(series.x[i], frame.log_x);
            const double ty = transform(series.y[i], frame.log_y);
            const int cx = static_cast<int>(std::round(
                (tx - frame.x_min) / (frame.x_max - frame.x_min) * (cols - 1)));
            const int cy = static_cast<int>(std::round(
                (frame.y_max - ty) / (frame.y_max - frame.y_min) * (rows - 1)));
            if (cx >= 0 && cx < cols && cy >= 0 && cy < rows)
                grid[static_cast<std::size_t>(cy)][static_cast<std::size_t>(cx)] = mark;
        }
    }
    std::string out = plot.title + "\n";
    for (std::size_t s = 0; s < plot.series.size(); ++s)
        out += std::string(1, marks[s % std::size(marks)]) + " = " +
               plot.series[s].label + "\n";
    out += "y: " + tick_label(frame.y_min, frame.log_y) + " .. " +
           tick_label(frame.y_max, frame.log_y) + "  " + plot.ylabel +
           (frame.log_y ? " (log)" : "") + "\n";
    for (const std::string& line : grid) out += "|" + line + "|\n";
    out += "x: " + tick_label(frame.x_min, frame.log_x) + " .. " +
           tick_label(frame.x_max, frame.log_x) + "  " + plot.xlabel +
           (frame.log_x ? " (log)" : "") + "\n";
    return out;
}

Json Report::document() const {
    Json doc;
    doc["report"] = name;
    if (!map_echo.is_null()) doc["map"] = map_echo;
    doc["params"] = params.is_null() ? Json::object() : params;
    doc["data"] = data.is_null() ? Json::object() : data;
    Json tables_json = Json::object();
    for (const auto& [suffix, table] : tables) {
        const std::string key = suffix.empty() ? "main" : suffix;
        tables_json[key] = table_to_json(table);
    }
    doc["tables"] = std::move(tables_json);
    return doc;
}

std::optional<std::string> schema_error(const Json& doc) {
    static const std::set<std::string> known = {
        "orbit", "preimages", "poincare", "forward", "exponent", "rprofile",
        "children", "returns", "theoremb", "lb2bc", "decay", "regen-feigenbaum"};
    if (!doc.is_object()) return "document is not an object";
    if (!doc.contains("report") || !doc["report"].is_string())
        return "missing string field 'report'";
    if (!known.count(doc["report"].get<std::string>()))
        return "unknown report name '" + doc["report"].get<std::string>() + "'";
    if (doc.contains("map")) {
        const Json& m = doc["map"];
        if (!m.is_object() || !m.contains("degree") ||
            !m["degree"].is_number_integer() || m["degree"].get<int>() < 2)
            return "map echo must carry an integer degree >= 2";
        if (!m.contains("c") || !m["c"].is_array() || m["c"].size() != 2)
            return "map echo must carry c as [re, im]";
    }
    if (!doc.contains("params") || !doc["params"].is_object())
        return "missing object field 'params'";
    if (!doc.contains("data")) return "missing field 'data'";
    if (!doc.contains("tables") || !doc["tables"].is_object())
        return "missing object field 'tables'";
    for (const auto& [key, table] : doc["tables"].items()) {
        if (!table.is_object() || !table.contains("columns") ||
            !table["columns"].is_array() || !table.contains("rows") ||
            !table["rows"].is_array())
            return "table '" + key + "' must carry columns and rows";
        const std::size_t width = table["columns"].size();
        for (const Json& col : table["columns"])
            if (!col.is_string()) return "table '" + key + "' has a non-string column";
        for (const Json& row : table["rows"]) {
            if (!row.is_array() || row.size() != width)
                return "table '" + key + "' has a row width mismatch";
            for (const Json& cell : row)
                if (!cell.is_number() && !cell.is_string() && !cell.is_boolean() &&
                    !cell.is_null())
                    return "table '" + key + "' has an unsupported cell type";
        }
    }
    return std::nullopt;
}

std::vector<std::filesystem::path> emit_report(
    const Report& report, const std::set<std::string>& formats,
    const std::filesystem::path& dir, const std::string& basename) {
    for (const std::string& format : formats) {
        if (format != "csv" && format != "json" && format != "svg-plot" &&
            format != "ascii-plot")
            throw UsageError("unknown output format '" + format +
                             "' (expected csv, json, svg-plot, ascii-plot)");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::usage,
                    "cannot create output directory '" + dir.string() +
                        "': " + ec.message());

    auto write_file = [&](const std::filesystem::path& path,
                          const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw UsageError("cannot write '" + path.string() + "'");
        out << content;
        if (!out) throw UsageError("write failed for '" + path.string() + "'");
    };

    std::vector<std::filesystem::path> written;
    if (formats.count("csv")) {
        for (const auto& [suffix, table] : report.tables) {
            const std::string stem =
                suffix.empty() ? basename : basename + "_" + suffix;
            std::ostringstream out;
            write_csv(table, out);
            const auto path = dir / (stem + ".csv");
            write_file(path, out.str());
            written.push_back(path);
        }
    }
    if (formats.count("json")) {
        const Json doc = report.document();
        if (const auto err = schema_error(doc))
            throw std::logic_error("emitted document fails the schema check: " +
                                   *err);
        const auto path = dir / (basename + ".json");
        write_file(path, doc.dump(2) + "\n");
        written.push_back(path);
    }
    if (formats.count("svg-plot")) {
        if (!report.plot)
            throw UsageError("report '" + report.name + "' has no plot");
        const auto path = dir / (basename + ".svg");
        write_file(path, render_svg(*report.plot));
        written.push_back(path);
    }
    if (formats.count("ascii-plot")) {
        if (!report.plot)
            throw UsageError("report '" + report.name + "' has no plot");
        const auto path = dir / (basename + ".txt");
        write_file(path, render_ascii(*report.plot));
        written.push_back(path);
    }
    return written;
}

}  // namespace unicrit::cli
