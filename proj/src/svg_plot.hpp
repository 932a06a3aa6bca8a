#pragma once

// Internal: minimal self-contained SVG line plots for the gap-vs-iteration
// figures. No external rendering dependency.

#include <string>
#include <vector>

namespace aggmdp::detail {

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct ReferenceLine {
  std::string label;
  std::string color;
  double y = 0.0;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series,
                    const std::vector<ReferenceLine>& reference_lines);

}  // namespace aggmdp::detail
