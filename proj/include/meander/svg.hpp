#pragma once

#include <string>
#include <utility>
#include <vector>

namespace meander {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Minimal log-log scatter+line plot with an optional n^{-1/2} reference line.
std::string render_loglog_svg(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<SvgSeries>& series,
                              bool guide_half_slope);

// log-x plot with a horizontal guide at y = 1 (for tau-tail ratios).
std::string render_ratio_svg(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<SvgSeries>& series);

} // namespace meander
