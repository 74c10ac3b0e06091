#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace dynstate::plot {

struct LineSeries {
    std::string label;
    std::vector<double> y;      // NaN entries are skipped
    std::vector<double> spread; // optional +/- band, may be empty
};

/// Minimal standalone SVG line chart.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::vector<double>& x, const std::vector<LineSeries>& series);

/// Scatter of labeled 2-D points over a decision-function raster
/// (sign of decision colors the background grid).
std::string scatter_with_boundary(const std::string& title,
                                  const std::vector<std::array<double, 2>>& points,
                                  const std::vector<int>& labels,
                                  const std::function<double(double, double)>& decision);

} // namespace dynstate::plot
