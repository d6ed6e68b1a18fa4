#pragma once

#include <string>
#include <utility>
#include <vector>

// Minimal SVG line-plot writer: polylines over shared axes, no external
// plotting dependency. CSV stays the canonical trace output.

namespace slsq {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

std::string render_line_plot(const std::vector<SvgSeries>& series, const std::string& title,
                             int width = 900, int height = 480);

} // namespace slsq
