#include "irgpucb/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "irgpucb/errors.hpp"

namespace irgpucb {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InputError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InputError("not a number: '" + s + "'");
    return v;
}

void write_trace_csv(std::ostream& out, const std::vector<RegretTrace>& traces) {
    out << kTraceHeader << '\n';
    for (const auto& trace : traces) {
        for (const auto& row : trace.rows) {
            out << trace.trial << ',' << row.iter << ',';
            for (Eigen::Index j = 0; j < row.x.size(); ++j) {
                if (j > 0) out << ';';
                out << format_number(row.x[j]);
            }
            out << ',' << format_number(row.y) << ',';
            if (row.zeta) out << format_number(*row.zeta);
            out << ',' << format_number(row.simple_regret) << ',' << format_number(row.cumulative_regret) << '\n';
        }
    }
}

std::vector<RegretTrace> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader) throw InputError("trace CSV: missing or wrong header");
    std::vector<RegretTrace> traces;
    std::map<int, std::size_t> index;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream is(line);
        while (std::getline(is, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 7) throw InputError("trace CSV line " + std::to_string(line_no) + ": expected 7 cells");
        const int trial = static_cast<int>(parse_number(cells[0]));
        auto [it, inserted] = index.emplace(trial, traces.size());
        if (inserted) {
            traces.emplace_back();
            traces.back().trial = trial;
        }
        TraceRow row;
        row.iter = static_cast<int>(parse_number(cells[1]));
        std::vector<double> coords;
        std::istringstream xs(cells[2]);
        while (std::getline(xs, cell, ';')) coords.push_back(parse_number(cell));
        row.x = Eigen::Map<Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(coords.size()));
        row.y = parse_number(cells[3]);
        if (!cells[4].empty()) row.zeta = parse_number(cells[4]);
        row.simple_regret = parse_number(cells[5]);
        row.cumulative_regret = parse_number(cells[6]);
        traces[it->second].rows.push_back(std::move(row));
    }
    return traces;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
    out << kAggregateHeader << '\n';
    for (const auto& r : rows)
        out << r.iter << ',' << format_number(r.mean_sr) << ',' << format_number(r.stderr_sr) << ','
            << format_number(r.mean_cr) << ',' << format_number(r.mean_zeta) << '\n';
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_svg(std::ostream& out, const std::string& title, const std::string& y_label,
               const std::vector<Series>& series, bool log_y) {
    constexpr double W = 720, H = 440, left = 70, right = 190, top = 40, bottom = 50;
    constexpr double plot_w = W - left - right, plot_h = H - top - bottom;
    constexpr double kLogFloor = 1e-12;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto ty = [&](double y) { return log_y ? std::log10(std::max(y, kLogFloor)) : y; };
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (log_y) {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (ty(y) - ymin) / (ymax - ymin)) * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
        << W << ' ' << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << fmt(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << xml_escape(title) << "</text>\n"
        << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int y_ticks = log_y ? static_cast<int>(ymax - ymin) : 5;
    for (int k = 0; k <= y_ticks; ++k) {
        const double v = ymin + (ymax - ymin) * k / std::max(1, y_ticks);
        const double y = top + (1.0 - (v - ymin) / (ymax - ymin)) * plot_h;
        out << "<line x1=\"" << left - 4 << "\" y1=\"" << fmt(y) << "\" x2=\"" << left << "\" y2=\"" << fmt(y)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << left - 8 << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
            << (log_y ? "1e" + tick_label(v) : tick_label(v)) << "</text>\n";
    }
    for (int k = 0; k <= 5; ++k) {
        const double v = xmin + (xmax - xmin) * k / 5.0;
        out << "<text x=\"" << fmt(px(v)) << "\" y=\"" << fmt(top + plot_h + 18)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(std::round(v * 100) / 100) << "</text>\n";
    }
    out << "<text x=\"" << fmt(left + plot_w / 2) << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">iteration</text>\n"
        << "<text x=\"16\" y=\"" << fmt(top + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << fmt(top + plot_h / 2) << ")\">" << xml_escape(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            out << (first ? "" : " ") << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
            first = false;
        }
        out << "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(si);
        out << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << fmt(ly) << "\" x2=\"" << left + plot_w + 32
            << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << fmt(ly + 4) << "\" font-size=\"11\">"
            << xml_escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << contents;
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace irgpucb
