#ifndef COGMAP_PLOT_HPP
#define COGMAP_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cogmap/csv.hpp"
#include "cogmap/format.hpp"

namespace cogmap {

// Minimal SVG line plot: one polyline per series over a shared x axis.
// Convenience output only; nothing downstream depends on it.
inline void write_svg_lineplot(const std::string& path, const std::vector<double>& x,
                               const std::vector<std::vector<double>>& series,
                               const std::string& title) {
    const int width = 640, height = 420, margin = 45;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const auto& s : series)
        for (double v : s)
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const auto px = [&](double v) {
        return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    const auto py = [&](double v) {
        return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin);
    };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) + "\" y=\"20\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"13\">" + title + "</text>\n";
    // axes
    svg += "<line x1=\"" + format_double(px(xmin)) + "\" y1=\"" + format_double(py(ymin)) +
           "\" x2=\"" + format_double(px(xmax)) + "\" y2=\"" + format_double(py(ymin)) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + format_double(px(xmin)) + "\" y1=\"" + format_double(py(ymin)) +
           "\" x2=\"" + format_double(px(xmin)) + "\" y2=\"" + format_double(py(ymax)) +
           "\" stroke=\"black\"/>\n";
    for (const double v : {xmin, xmax}) {
        svg += "<text x=\"" + format_double(px(v)) + "\" y=\"" + format_double(py(ymin) + 16) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_double(v) + "</text>\n";
    }
    for (const double v : {ymin + pad, ymax - pad}) {
        svg += "<text x=\"" + format_double(px(xmin) - 6) + "\" y=\"" + format_double(py(v) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_double(v) + "</text>\n";
    }
    int color_idx = 0;
    for (const auto& s : series) {
        std::string pts;
        for (std::size_t i = 0; i < x.size() && i < s.size(); ++i) {
            if (!std::isfinite(s[i])) continue;
            pts += format_double(px(x[i])) + "," + format_double(py(s[i])) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" +
               std::string(colors[color_idx++ % 5]) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
    }
    svg += "</svg>\n";
    detail::write_text_file(path, svg);
}

} // namespace cogmap

#endif
