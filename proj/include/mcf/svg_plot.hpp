#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mcf {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Static SVG line plot with labeled axes and tick marks; log_y plots
/// log10 of the values (non-positive samples are dropped). Throws Error
/// when no finite points remain.
void svg_line_plot(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const std::vector<PlotSeries>& series, bool log_y = false);

} // namespace mcf
