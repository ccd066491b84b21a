#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace l1regret {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

namespace detail {
inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}
}  // namespace detail

/// Minimal static line chart: log-x, log-y (values clamped below at y_floor),
/// one polyline per series plus a small legend. Decorative output only.
inline std::string line_chart_svg(const std::vector<SvgSeries>& series,
                                  const std::string& x_label, const std::string& y_label,
                                  double y_floor = 1e-26) {
    const double width = 800, height = 520;
    const double ml = 70, mr = 150, mt = 20, mb = 50;
    const double huge = std::numeric_limits<double>::infinity();
    double xmin = huge, xmax = -huge, ymin = huge, ymax = -huge;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            const double lx = std::log10(x);
            const double ly = std::log10(std::max(y, y_floor));
            xmin = std::min(xmin, lx);
            xmax = std::max(xmax, lx);
            ymin = std::min(ymin, ly);
            ymax = std::max(ymax, ly);
        }
    }
    if (!(xmin < xmax)) xmax = xmin + 1.0;
    if (!(ymin < ymax)) ymax = ymin + 1.0;

    auto px = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double ly) { return height - mb - (ly - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"520\" "
           "viewBox=\"0 0 800 520\">\n";
    svg += "<rect width=\"800\" height=\"520\" fill=\"white\"/>\n";
    // axes
    svg += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(height - mb) +
           "\" x2=\"" + detail::svg_num(width - mr) + "\" y2=\"" + detail::svg_num(height - mb) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(mt) + "\" x2=\"" +
           detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(height - mb) +
           "\" stroke=\"black\"/>\n";
    // tick labels at integer powers of ten
    for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
        svg += "<text x=\"" + detail::svg_num(px(e)) + "\" y=\"" + detail::svg_num(height - mb + 18) +
               "\" font-size=\"12\" text-anchor=\"middle\">1e" + std::to_string(e) + "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax));
         e += std::max(1, static_cast<int>((ymax - ymin) / 8))) {
        svg += "<text x=\"" + detail::svg_num(ml - 6) + "\" y=\"" + detail::svg_num(py(e) + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">1e" + std::to_string(e) + "</text>\n";
    }
    svg += "<text x=\"" + detail::svg_num((ml + width - mr) / 2) + "\" y=\"" +
           detail::svg_num(height - 10) + "\" font-size=\"14\" text-anchor=\"middle\">" + x_label +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + detail::svg_num((mt + height - mb) / 2) +
           "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           detail::svg_num((mt + height - mb) / 2) + ")\">" + y_label + "</text>\n";

    double legend_y = mt + 16;
    for (const auto& s : series) {
        std::string pts;
        for (const auto& [x, y] : s.points) {
            pts += detail::svg_num(px(std::log10(x))) + "," +
                   detail::svg_num(py(std::log10(std::max(y, y_floor)))) + " ";
        }
        if (!pts.empty()) pts.pop_back();
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" +
               pts + "\"/>\n";
        svg += "<line x1=\"" + detail::svg_num(width - mr + 10) + "\" y1=\"" +
               detail::svg_num(legend_y - 4) + "\" x2=\"" + detail::svg_num(width - mr + 34) +
               "\" y2=\"" + detail::svg_num(legend_y - 4) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + detail::svg_num(width - mr + 40) + "\" y=\"" +
               detail::svg_num(legend_y) + "\" font-size=\"12\">" + s.label + "</text>\n";
        legend_y += 18;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace l1regret
