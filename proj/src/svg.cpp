#include "slsq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace slsq {

std::string render_line_plot(const std::vector<SvgSeries>& series, const std::string& title,
                             int width, int height) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const SvgSeries& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin < xmax)) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (!(ymin < ymax)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad_x = 60.0, pad_y = 40.0;
    const double span_x = xmax - xmin, span_y = ymax - ymin;
    const auto px = [&](double x) { return pad_x + (x - xmin) / span_x * (width - 2 * pad_x); };
    const auto py = [&](double y) { return height - pad_y - (y - ymin) / span_y * (height - 2 * pad_y); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
        << "</text>\n";

    // axes with a handful of labelled ticks
    out << "<line x1=\"" << pad_x << "\" y1=\"" << height - pad_y << "\" x2=\"" << width - pad_x
        << "\" y2=\"" << height - pad_y << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << pad_x << "\" y1=\"" << pad_y << "\" x2=\"" << pad_x << "\" y2=\""
        << height - pad_y << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + span_x * i / 5.0;
        const double fy = ymin + span_y * i / 5.0;
        out << "<text x=\"" << px(fx) << "\" y=\"" << height - pad_y + 16
            << "\" text-anchor=\"middle\" font-size=\"10\">" << fx << "</text>\n";
        out << "<text x=\"" << pad_x - 6 << "\" y=\"" << py(fy) + 3
            << "\" text-anchor=\"end\" font-size=\"10\">" << fy << "</text>\n";
    }

    double legend_y = pad_y + 4.0;
    for (const SvgSeries& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& [x, y] : s.points)
            if (std::isfinite(x) && std::isfinite(y)) out << px(x) << "," << py(y) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << width - pad_x - 4 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label
            << "</text>\n";
        legend_y += 14.0;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace slsq
