#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wrom {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Minimal static SVG line plots; log-log variant skips non-positive points.
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<PlotSeries>& series, bool loglog);

}  // namespace wrom
