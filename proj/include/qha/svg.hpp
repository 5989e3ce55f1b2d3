#pragma once

// Minimal hand-written SVG: line charts and heatmaps.

#include "qha/types.hpp"

#include <string>
#include <vector>

namespace qha::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series);

/// Grayscale heatmap of a real grid, centered at the origin and downsampled
/// to at most max_cells cells per side.
std::string heatmap(const std::string& title, const RMatrix& values, int max_cells = 140);

}  // namespace qha::svg
