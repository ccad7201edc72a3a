#pragma once

// Minimal self-contained SVG line chart: frame, ticks, one polyline, labels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "error.hpp"

namespace sharpe_bound::svg {

struct ChartLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

namespace detail {

inline std::string escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

inline std::string num(double v, int digits = 2) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Tick label precision: enough decimals to separate ticks `step` apart.
inline int decimals_for(double step) {
    return step >= 1.0 ? 1 : std::min(6, static_cast<int>(std::ceil(-std::log10(step))) + 1);
}

}  // namespace detail

inline void write_line_chart(std::ostream& out, std::span<const double> xs, std::span<const double> ys,
                             const ChartLabels& labels) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw input_error("svg chart: x and y must be non-empty and of equal length");
    }
    constexpr double width = 640, height = 420;
    constexpr double left = 70, right = 20, top = 40, bottom = 55;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

    auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
    double x0 = *xmin_it, x1 = *xmax_it, y0 = std::min(0.0, *ymin_it), y1 = *ymax_it;
    if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
    if (y1 == y0) { y1 = y0 + 1.0; }
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * plot_h; };

    using detail::num;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << detail::escape(labels.title) << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    constexpr int ticks = 5;
    const int xd = detail::decimals_for((x1 - x0) / ticks);
    const int yd = detail::decimals_for((y1 - y0) / ticks);
    for (int i = 0; i <= ticks; ++i) {
        const double xv = x0 + (x1 - x0) * i / ticks;
        const double yv = y0 + (y1 - y0) * i / ticks;
        out << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << top + plot_h << "\" x2=\"" << num(px(xv))
            << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(px(xv)) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
            << num(xv, xd) << "</text>\n";
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << left << "\" y2=\""
            << num(py(yv)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">"
            << num(yv, yd) << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
        << detail::escape(labels.x_label) << "</text>\n";
    out << "<text transform=\"translate(18," << top + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << detail::escape(labels.y_label) << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << (i ? " " : "") << num(px(xs[i])) << ',' << num(py(ys[i]));
    }
    out << "\"/>\n</svg>\n";
}

}  // namespace sharpe_bound::svg
