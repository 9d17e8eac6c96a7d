#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graspa/error.hpp"

namespace graspa {

/// Round-trip formatting: 17 significant digits, shortest of fixed/scientific.
[[nodiscard]] inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return {buf.data(), res.ptr};
}

/// A header row plus numeric rows.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::vector<double> column(std::size_t c) const {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r.at(c));
        return out;
    }
};

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
    if (!out) throw InvalidArgument("failed writing " + path.string());
}

inline void write_csv(const std::filesystem::path& path, const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    write_text_file(path, os.str());
}

/// Row i holds node i; the header lists the grid points.
[[nodiscard]] inline Table matrix_table(const Eigen::MatrixXd& m, std::span<const double> grid) {
    Table t;
    t.header.emplace_back("node");
    for (double g : grid) t.header.push_back(format_double(g));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<double> row{static_cast<double>(i)};
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// SVG line plots
// ---------------------------------------------------------------------------

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 640;
    int height = 420;
};

namespace detail {
inline std::string xml_escape(const std::string& s) {
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

inline std::string fmt_short(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 4);
    return {buf.data(), res.ptr};
}
}  // namespace detail

/// Static line plot of every column against column 0.
[[nodiscard]] inline std::string render_svg(const Table& t, const PlotOptions& opt) {
    static constexpr std::array<const char*, 6> palette = {"#1f77b4", "#d62728", "#2ca02c",
                                                          "#9467bd", "#ff7f0e", "#8c564b"};
    static constexpr std::array<const char*, 3> dashes = {"", "6,4", "2,3"};
    const double left = 70;
    const double right = 20;
    const double top = 40;
    const double bottom = 50;
    const double pw = opt.width - left - right;
    const double ph = opt.height - top - bottom;

    const auto ty = [&](double v) { return opt.log_y ? std::log10(v) : v; };
    const auto usable = [&](double v) { return std::isfinite(v) && (!opt.log_y || v > 0.0); };

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& r : t.rows) {
        if (r.empty() || !std::isfinite(r[0])) continue;
        xmin = std::min(xmin, r[0]);
        xmax = std::max(xmax, r[0]);
        for (std::size_t c = 1; c < r.size(); ++c) {
            if (!usable(r[c])) continue;
            ymin = std::min(ymin, ty(r[c]));
            ymax = std::max(ymax, ty(r[c]));
        }
    }
    if (!(xmin < xmax)) { xmin -= 1; xmax += 1; }
    if (!(ymin < ymax)) { ymin -= 1; ymax += 1; }

    const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << opt.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << detail::xml_escape(opt.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0;
        const double yv = ymin + (ymax - ymin) * k / 4.0;
        os << "<text x=\"" << px(xv) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
           << detail::fmt_short(xv) << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
           << (opt.log_y ? "1e" + detail::fmt_short(yv) : detail::fmt_short(yv)) << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << opt.height - 12 << "\" text-anchor=\"middle\">"
       << detail::xml_escape(opt.x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << detail::xml_escape(opt.y_label) << "</text>\n";

    for (std::size_t c = 1; c < t.header.size(); ++c) {
        const char* colour = palette[(c - 1) % palette.size()];
        const char* dash = dashes[(c - 1) % dashes.size()];
        std::string path;
        bool pen_down = false;
        for (const auto& r : t.rows) {
            if (c >= r.size() || !usable(r[c]) || !std::isfinite(r[0])) {
                pen_down = false;
                continue;
            }
            path += (pen_down ? " L" : " M") + detail::fmt_short(px(r[0])) + "," + detail::fmt_short(py(ty(r[c])));
            pen_down = true;
        }
        os << "<path fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (*dash) os << " stroke-dasharray=\"" << dash << "\"";
        os << " d=\"" << path << "\"/>\n";
        const double ly = top + 14 + 16 * static_cast<double>(c - 1);
        os << "<line x1=\"" << left + pw - 130 << "\" y1=\"" << ly << "\" x2=\"" << left + pw - 105 << "\" y2=\""
           << ly << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (*dash) os << " stroke-dasharray=\"" << dash << "\"";
        os << "/>\n<text x=\"" << left + pw - 100 << "\" y=\"" << ly + 4 << "\">" << detail::xml_escape(t.header[c])
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace graspa
