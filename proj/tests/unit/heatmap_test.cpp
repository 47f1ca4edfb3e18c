#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <regex>

#include "meso/errors.hpp"
#include "meso/heatmap.hpp"

using namespace meso;

namespace {

HeatmapGrid two_by_two() {
  HeatmapGrid g;
  g.x_label = "p_p";
  g.y_label = "p_c";
  g.xs = {0.1, 0.2};
  g.ys = {0.5, 1.0};
  g.values = {-1.0, 0.0, 0.5, 1.0};
  return g;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::string cells_section(const std::string& svg) {
  const auto start = svg.find("<g id=\"cells\"");
  return svg.substr(start, svg.find("</g>", start) - start);
}

}  // namespace

TEST(GridCsv, RoundTrip) {
  auto g = two_by_two();
  g.values[1] = std::numeric_limits<double>::quiet_NaN();
  const auto text = format_grid_csv(g, {"seed: 1"});
  EXPECT_EQ(text.rfind("# seed: 1\n", 0), 0u);
  const auto back = parse_grid_csv(text);
  EXPECT_EQ(back.xs, g.xs);
  EXPECT_EQ(back.ys, g.ys);
  EXPECT_EQ(back.x_label, "p_p");
  EXPECT_EQ(back.y_label, "p_c");
  ASSERT_EQ(back.values.size(), 4u);
  EXPECT_TRUE(std::isnan(back.values[1]));
  EXPECT_EQ(back.values[3], 1.0);
  EXPECT_EQ(format_grid_csv(back, {"seed: 1"}), text);
}

TEST(GridCsv, Errors) {
  EXPECT_THROW((void)parse_grid_csv(""), ParseError);
  EXPECT_THROW((void)parse_grid_csv("y\\x,0.1,0.2\n"), ParseError);
  EXPECT_THROW((void)parse_grid_csv("y\\x,0.1,0.2\n0.5,1\n"), ParseError);
  EXPECT_THROW((void)parse_grid_csv("y\\x,0.1,0.2\n0.5,1,abc\n"), ParseError);
}

TEST(BoundaryCsv, RoundTrip) {
  const std::vector<std::pair<double, double>> pts{{0.1, 0.05}, {0.2, 0.2}};
  EXPECT_EQ(parse_boundary_csv(format_boundary_csv(pts)), pts);
  EXPECT_THROW((void)parse_boundary_csv("x,y\n0.1\n"), ParseError);
}

TEST(Svg, FourCellsAndPaletteExtremes) {
  const auto svg = render_heatmap_svg(two_by_two(), Palette::Diverging);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  const auto cells = cells_section(svg);
  EXPECT_EQ(count(cells, "<rect"), 4u);
  EXPECT_NE(cells.find("#b2182b"), std::string::npos);
  EXPECT_NE(cells.find("#2166ac"), std::string::npos);
  EXPECT_NE(cells.find("#f7f7f7"), std::string::npos);
  EXPECT_EQ(count(svg, "<polyline"), 0u);
}

TEST(Svg, SequentialAndNan) {
  auto g = two_by_two();
  g.values = {0.0, 1.0, 0.5, std::numeric_limits<double>::quiet_NaN()};
  const auto cells = cells_section(render_heatmap_svg(g, Palette::Sequential));
  EXPECT_NE(cells.find("#f7f7f7"), std::string::npos);
  EXPECT_NE(cells.find("#08306b"), std::string::npos);
  EXPECT_NE(cells.find("#cccccc"), std::string::npos);
}

TEST(Svg, BoundaryIsOneDashedPolyline) {
  const auto svg = render_heatmap_svg(two_by_two(), Palette::Diverging, {{0.1, 0.5}, {0.2, 1.0}}, "t");
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(svg, render_heatmap_svg(two_by_two(), Palette::Diverging, {{0.1, 0.5}, {0.2, 1.0}}, "t"));
}

TEST(Svg, Errors) {
  EXPECT_THROW((void)render_heatmap_svg(HeatmapGrid{}, Palette::Diverging), InputError);
  auto g = two_by_two();
  g.values.pop_back();
  EXPECT_THROW((void)render_heatmap_svg(g, Palette::Diverging), InputError);
}
