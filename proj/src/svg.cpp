#include "pttb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "pttb/core_model.hpp"

namespace pttb::svg {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Perceptually ordered dark-blue → yellow ramp.
std::string color(double v) {
    v = std::clamp(v, 0.0, 1.0);
    static constexpr double stops[5][3] = {
        {0.2422, 0.1504, 0.6603}, {0.1540, 0.5902, 0.9218}, {0.0297, 0.7082, 0.8163}, {0.7242, 0.7698, 0.1910}, {0.9769, 0.9839, 0.0805}};
    const double pos = v * 4.0;
    const int i = std::min(3, static_cast<int>(pos));
    const double t = pos - i;
    char buf[16];
    int rgb[3];
    for (int k = 0; k < 3; ++k) rgb[k] = static_cast<int>(std::lround(255.0 * (stops[i][k] + t * (stops[i + 1][k] - stops[i][k]))));
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

std::ofstream open(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

void line_chart(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                const std::string& y_label, const std::vector<Series>& series) {
    constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 60;
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        for (double x : s.x) x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
        for (double y : s.y) y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
    }
    if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right); };
    auto py = [&](double y) { return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom); };

    static const char* palette[] = {"#000000", "#1f4fd1", "#8a2be2", "#d62728", "#2ca02c", "#ff7f0e"};
    auto out = open(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title) << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
        << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = x_lo + t * (x_hi - x_lo) / 4, yv = y_lo + t * (y_hi - y_lo) / 4;
        out << "<text x=\"" << px(xv) << "\" y=\"" << height - bottom + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << std::round(xv * 1000) / 1000 << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << std::round(yv * 1000) / 1000 << "</text>\n";
    }
    out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (top + height - bottom) / 2 << ")\">" << escape(y_label) << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* col = palette[i % std::size(palette)];
        out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) out << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
        out << "\"/>\n";
        const double ly = top + 16.0 * static_cast<double>(i);
        out << "<line x1=\"" << width - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 30 << "\" y2=\"" << ly
            << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << width - right + 34 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << escape(s.name) << "</text>\n";
    }
    out << "</svg>\n";
}

void heatmap(const std::filesystem::path& path, const Heatmap& map) {
    const std::size_t rows = map.values.size();
    const std::size_t cols = rows ? map.values.front().size() : 0;
    const double cell = std::clamp(480.0 / static_cast<double>(std::max<std::size_t>({rows, cols, 1})), 6.0, 40.0);
    const double left = 130, top = 40;
    const double width = left + cell * static_cast<double>(cols) + 20;
    const double height = top + cell * static_cast<double>(rows) + 40;

    auto out = open(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(map.title) << "</text>\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out << "<rect x=\"" << left + cell * static_cast<double>(c) << "\" y=\"" << top + cell * static_cast<double>(r)
                << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"" << color(map.values[r][c]) << "\"/>\n";
        }
        if (r < map.row_labels.size() && cell >= 10) {
            out << "<text x=\"" << left - 6 << "\" y=\"" << top + cell * (static_cast<double>(r) + 0.65)
                << "\" text-anchor=\"end\" font-size=\"11\">" << escape(map.row_labels[r]) << "</text>\n";
        }
    }
    for (std::size_t c = 0; c < map.column_labels.size() && c < cols && cell >= 10; ++c) {
        out << "<text x=\"" << left + cell * (static_cast<double>(c) + 0.5) << "\" y=\"" << top + cell * static_cast<double>(rows) + 16
            << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(map.column_labels[c]) << "</text>\n";
    }
    if (map.row_overlay && cols > 0) {
        // Overlay values in [0.5, 1] span the full width.
        out << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"";
        for (std::size_t r = 0; r < std::min(rows, map.row_overlay->size()); ++r) {
            const double v = std::clamp(((*map.row_overlay)[r] - 0.5) / 0.5, 0.0, 1.0);
            out << left + v * cell * static_cast<double>(cols) << ',' << top + cell * (static_cast<double>(r) + 0.5) << ' ';
        }
        out << "\"/>\n";
    }
    if (map.marker) {
        out << "<circle cx=\"" << left + cell * (map.marker->first + 0.5) << "\" cy=\"" << top + cell * (map.marker->second + 0.5)
            << "\" r=\"" << std::max(4.0, cell * 0.6) << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace pttb::svg
