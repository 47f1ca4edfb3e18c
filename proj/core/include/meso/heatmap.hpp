#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meso {

// Rectangular grid of values. values is row-major with ys as rows.
struct HeatmapGrid {
  std::string x_label = "x";
  std::string y_label = "y";
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;

  double at(std::size_t ix, std::size_t iy) const { return values[iy * xs.size() + ix]; }
};

enum class Palette {
  Diverging,   // red (negative) - white (zero) - blue (positive), symmetric about 0
  Sequential,  // white (minimum) - dark blue (maximum)
};

// Grid CSV:
//   # comment lines (provenance)
//   y_label\x_label,x0,x1,...
//   y0,v00,v01,...
//   ...
// "nan" marks an undefined cell.
std::string format_grid_csv(const HeatmapGrid& grid, const std::vector<std::string>& comments);
// Throws ParseError for empty input and ragged or non-numeric rows.
HeatmapGrid parse_grid_csv(std::string_view text);

// Boundary CSV: "x,y" per line after an optional "x,y" header.
std::string format_boundary_csv(const std::vector<std::pair<double, double>>& points);
std::vector<std::pair<double, double>> parse_boundary_csv(std::string_view text);

// Standalone SVG: one <rect> per cell, a colour bar legend and, when the
// boundary is non-empty, one dashed <polyline> in data coordinates. Output
// bytes depend only on the arguments.
std::string render_heatmap_svg(const HeatmapGrid& grid, Palette palette,
                               const std::vector<std::pair<double, double>>& boundary = {},
                               std::string_view title = {});

}  // namespace meso
