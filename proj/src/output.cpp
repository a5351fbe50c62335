// Copyright 2026 The qurshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qurshadow/harness.hpp"

namespace qurshadow {

namespace {

std::string format_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + '"';
}

std::string format_cell(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return csv_field(*s);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return format_real(std::get<double>(c));
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            default:
                out += ch;
        }
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing " + path.string());
}

double max_of_column(const ResultTable& t, const std::string& name) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows.size(); ++r) m = std::max(m, t.real(r, name));
    return m;
}

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

void write_csv(std::ostream& out, const ResultTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i != 0) out << ',';
        out << csv_field(table.columns[i].name);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) out << ',';
            out << format_cell(row[i]);
        }
        out << '\n';
    }
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
    std::ostringstream s;
    write_csv(s, table);
    write_file(path, s.str());
}

nlohmann::ordered_json table_to_json(const ResultTable& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit([&](const auto& v) { o[table.columns[i].name] = v; }, row[i]);
        }
        rows.push_back(std::move(o));
    }
    nlohmann::ordered_json columns = nlohmann::ordered_json::array();
    for (const auto& c : table.columns) columns.push_back(c.name);
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["experiment"] = table.experiment;
    out["columns"] = std::move(columns);
    out["rows"] = std::move(rows);
    return out;
}

void emit_json(const ResultTable& table, const std::filesystem::path& path) {
    write_file(path, table_to_json(table).dump(2) + "\n");
}

std::optional<PlotSpec> plot_spec_for(const ResultTable& table) {
    if (table.experiment == "purity-sweep") {
        PlotSpec spec{"Shadow vs tomography purity", "tau", "tau", "purity",
                      {"p_cs_mean", "p_qst", "p_true"}, std::nullopt, 0.0};
        if (!table.rows.empty()) {
            spec.filter_column = "n_s";
            spec.filter_value = max_of_column(table, "n_s");
            spec.title += " (n_s = " + format_tick(spec.filter_value) + ")";
        }
        return spec;
    }
    if (table.experiment == "re-bounds") {
        PlotSpec spec{"Relative-entropy coherence uncertainty relations", "tau", "tau", "bits",
                      {"lhs", "yuan_clamped", "sanchez_clamped", "berta_clamped", "korzekwa_clamped"},
                      std::nullopt, 0.0};
        if (!table.rows.empty()) spec.title += " (c = " + format_tick(table.real(0, "c")) + ")";
        return spec;
    }
    if (table.experiment == "l1-cf") {
        return PlotSpec{"l1 and formation coherence uncertainty relations (c = 0.5)", "tau", "tau", "coherence",
                        {"l1_lhs", "l1_bound", "cf_lhs", "cf_bound"}, std::nullopt, 0.0};
    }
    return std::nullopt;
}

std::string render_svg(const ResultTable& table, const PlotSpec& spec) {
    constexpr double kWidth = 640;
    constexpr double kHeight = 420;
    constexpr double kLeft = 60;
    constexpr double kRight = 170;
    constexpr double kTop = 40;
    constexpr double kBottom = 50;

    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (spec.filter_column && table.real(r, *spec.filter_column) != spec.filter_value) continue;
        rows.push_back(r);
    }
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
        return table.real(a, spec.x_column) < table.real(b, spec.x_column);
    });

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (std::size_t r : rows) {
        x_lo = std::min(x_lo, table.real(r, spec.x_column));
        x_hi = std::max(x_hi, table.real(r, spec.x_column));
        for (const auto& s : spec.series) {
            y_lo = std::min(y_lo, table.real(r, s));
            y_hi = std::max(y_hi, table.real(r, s));
        }
    }
    if (rows.empty()) {
        x_lo = y_lo = 0.0;
        x_hi = y_hi = 1.0;
    }
    if (x_hi - x_lo < 1e-12) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    const double y_pad = std::max(0.05 * (y_hi - y_lo), 1e-3);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    std::ostringstream svg;
    svg.setf(std::ios::fixed);
    svg.precision(2);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"13\">"
        << xml_escape(spec.title) << "</text>\n"
        << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        svg << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px(xv) << "\" y2=\""
            << kTop + plot_h + 4 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(xv) << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">"
            << format_tick(xv) << "</text>\n"
            << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft << "\" y2=\"" << py(yv)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
            << format_tick(yv) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
        << xml_escape(spec.x_label) << "</text>\n"
        << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kTop + plot_h / 2 << ")\">" << xml_escape(spec.y_label) << "</text>\n";

    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const char* color = kPalette[s % kPalette.size()];
        svg << "<g class=\"series\" data-name=\"" << xml_escape(spec.series[s]) << "\">\n<polyline fill=\"none\" stroke=\""
            << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k != 0) svg << ' ';
            svg << px(table.real(rows[k], spec.x_column)) << ',' << py(table.real(rows[k], spec.series[s]));
        }
        svg << "\"/>\n";
        for (std::size_t r : rows) {
            svg << "<circle cx=\"" << px(table.real(r, spec.x_column)) << "\" cy=\"" << py(table.real(r, spec.series[s]))
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        const double ly = kTop + 10 + 18.0 * static_cast<double>(s);
        svg << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 32
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly + 4 << "\">" << xml_escape(spec.series[s])
            << "</text>\n</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const ResultTable& table, const std::filesystem::path& path) {
    if (table.rows.empty()) throw std::invalid_argument("cannot plot empty table " + table.experiment);
    const auto spec = plot_spec_for(table);
    if (!spec) throw std::invalid_argument("no figure defined for table " + table.experiment);
    write_file(path, render_svg(table, *spec));
}

std::string output_stem(const ResultTable& table, std::uint64_t seed) {
    std::string stem = table.experiment;
    if (table.experiment == "re-bounds" && !table.rows.empty()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "_c%.2f", table.real(0, "c"));
        stem += buf;
    }
    return stem + "_seed" + std::to_string(seed);
}

std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& cfg, const ExperimentOutput& output) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    for (const ResultTable& table : output.tables) {
        const std::string stem = output_stem(table, cfg.seed);
        if (cfg.format == OutputFormat::Csv) {
            written.push_back(cfg.out_dir / (stem + ".csv"));
            emit_csv(table, written.back());
        } else {
            written.push_back(cfg.out_dir / (stem + ".json"));
            emit_json(table, written.back());
        }
        if (cfg.plot && !table.rows.empty() && plot_spec_for(table)) {
            written.push_back(cfg.out_dir / (stem + ".svg"));
            emit_plot(table, written.back());
        }
    }
    return written;
}

}  // namespace qurshadow
