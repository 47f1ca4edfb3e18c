#include "meso/heatmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  for (auto& f : out) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
  }
  return out;
}

double parse_double(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc{} || ptr != end || field.empty())
    throw ParseError(fmt::format("'{}' is not a number", field), line_no);
  return v;
}

// Data lines with their 1-based line numbers; '#' comments and blanks dropped.
std::vector<std::pair<std::size_t, std::string_view>> data_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') out.emplace_back(line_no, line);
    pos = nl + 1;
  }
  return out;
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.10g}", v);
}

std::string axis_number(double v) { return fmt::format("{:.6g}", v); }

struct Rgb {
  int r, g, b;
};

Rgb mix(Rgb from, Rgb to, double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto lerp = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
  return {lerp(from.r, to.r), lerp(from.g, to.g), lerp(from.b, to.b)};
}

std::string hex(Rgb c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

constexpr Rgb kWhite{247, 247, 247};
constexpr Rgb kBlue{33, 102, 172};
constexpr Rgb kRed{178, 24, 43};
constexpr Rgb kNavy{8, 48, 107};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_grid_csv(const HeatmapGrid& grid, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += grid.y_label + "\\" + grid.x_label;
  for (double x : grid.xs) out += "," + axis_number(x);
  out += '\n';
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
    out += axis_number(grid.ys[iy]);
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) out += "," + number(grid.at(ix, iy));
    out += '\n';
  }
  return out;
}

HeatmapGrid parse_grid_csv(std::string_view text) {
  const auto lines = data_lines(text);
  if (lines.empty()) throw ParseError("grid CSV is empty", 0);
  HeatmapGrid grid;
  const auto header = split_csv(lines.front().second);
  if (header.size() < 2) throw ParseError("grid header needs at least one x value", lines.front().first);
  const auto corner = header.front();
  if (const auto slash = corner.find('\\'); slash != std::string_view::npos) {
    grid.y_label = std::string(corner.substr(0, slash));
    grid.x_label = std::string(corner.substr(slash + 1));
  }
  for (std::size_t i = 1; i < header.size(); ++i) grid.xs.push_back(parse_double(header[i], lines.front().first));
  if (lines.size() < 2) throw ParseError("grid CSV has no data rows", lines.front().first);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto [line_no, line] = lines[r];
    const auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw ParseError(fmt::format("ragged grid: row has {} fields, header has {}", fields.size(), header.size()),
                       line_no);
    grid.ys.push_back(parse_double(fields[0], line_no));
    for (std::size_t i = 1; i < fields.size(); ++i) grid.values.push_back(parse_double(fields[i], line_no));
  }
  return grid;
}

std::string format_boundary_csv(const std::vector<std::pair<double, double>>& points) {
  std::string out = "x,y\n";
  for (const auto& [x, y] : points) out += number(x) + "," + number(y) + "\n";
  return out;
}

std::vector<std::pair<double, double>> parse_boundary_csv(std::string_view text) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [line_no, line] : data_lines(text)) {
    const auto fields = split_csv(line);
    if (fields.size() != 2) throw ParseError("boundary rows need exactly two fields", line_no);
    if (fields[0] == "x" && fields[1] == "y") continue;
    out.emplace_back(parse_double(fields[0], line_no), parse_double(fields[1], line_no));
  }
  return out;
}

std::string render_heatmap_svg(const HeatmapGrid& grid, Palette palette,
                               const std::vector<std::pair<double, double>>& boundary, std::string_view title) {
  const std::size_t nx = grid.xs.size(), ny = grid.ys.size();
  if (nx == 0 || ny == 0) throw InputError("heatmap grid is empty");
  if (grid.values.size() != nx * ny) throw InputError("heatmap values do not match the grid shape");

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : grid.values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool any = lo <= hi;
  if (!any) lo = hi = 0.0;
  const double span = palette == Palette::Diverging ? std::max(std::abs(lo), std::abs(hi)) : hi - lo;

  auto colour = [&](double v) -> std::string {
    if (std::isnan(v)) return "#cccccc";
    if (palette == Palette::Diverging) {
      const double t = span > 0.0 ? v / span : 0.0;
      return hex(t >= 0.0 ? mix(kWhite, kBlue, t) : mix(kWhite, kRed, -t));
    }
    return hex(mix(kWhite, kNavy, span > 0.0 ? (v - lo) / span : 0.0));
  };

  constexpr double left = 70, top = 40, plot = 400, legend_w = 16, legend_gap = 24;
  const double cw = plot / static_cast<double>(nx), ch = plot / static_cast<double>(ny);
  const double width = left + plot + legend_gap + legend_w + 70, height = top + plot + 60;

  std::string svg;
  fmt::format_to(std::back_inserter(svg),
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
                 width, height, width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!title.empty())
    fmt::format_to(std::back_inserter(svg),
                   "<text x=\"{:.1f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                   left + plot / 2, escape(title));

  svg += "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double y = top + plot - static_cast<double>(iy + 1) * ch;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x = left + static_cast<double>(ix) * cw;
      fmt::format_to(std::back_inserter(svg),
                     "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"><title>{}={} {}={} : {}</title></rect>\n",
                     x, y, cw, ch, colour(grid.at(ix, iy)), escape(grid.x_label), axis_number(grid.xs[ix]),
                     escape(grid.y_label), axis_number(grid.ys[iy]), number(grid.at(ix, iy)));
    }
  }
  svg += "</g>\n";

  // Cell centres sit at the grid coordinates; interpolate linearly between them.
  auto to_px = [](double v, const std::vector<double>& axis, double origin, double cell, bool flip) {
    const double first = axis.front(), last = axis.back();
    const double n = static_cast<double>(axis.size());
    const double frac = axis.size() > 1 ? (v - first) / (last - first) * (n - 1) : 0.0;
    const double offset = (frac + 0.5) * cell;
    return flip ? origin - offset : origin + offset;
  };

  if (!boundary.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"6,4\" points=\"";
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      if (i) svg += ' ';
      fmt::format_to(std::back_inserter(svg), "{:.2f},{:.2f}", to_px(boundary[i].first, grid.xs, left, cw, false),
                     to_px(boundary[i].second, grid.ys, top + plot, ch, true));
    }
    svg += "\"/>\n";
  }

  fmt::format_to(std::back_inserter(svg),
                 "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"#333333\"/>\n",
                 left, top, plot, plot);
  const std::size_t x_ticks[] = {0, nx / 2, nx - 1};
  for (std::size_t i : x_ticks)
    fmt::format_to(std::back_inserter(svg),
                   "<text x=\"{:.2f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
                   left + (static_cast<double>(i) + 0.5) * cw, top + plot + 16, axis_number(grid.xs[i]));
  const std::size_t y_ticks[] = {0, ny / 2, ny - 1};
  for (std::size_t i : y_ticks)
    fmt::format_to(std::back_inserter(svg),
                   "<text x=\"{:.1f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
                   left - 6, top + plot - (static_cast<double>(i) + 0.5) * ch + 4, axis_number(grid.ys[i]));
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
                 left + plot / 2, top + plot + 36, escape(grid.x_label));
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"18\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1f})\">{}</text>\n",
                 top + plot / 2, top + plot / 2, escape(grid.y_label));

  // Colour bar.
  const double lx = left + plot + legend_gap;
  constexpr int kSteps = 20;
  const double legend_lo = palette == Palette::Diverging ? -span : lo;
  const double legend_hi = palette == Palette::Diverging ? span : hi;
  svg += "<g id=\"legend\" shape-rendering=\"crispEdges\">\n";
  for (int s = 0; s < kSteps; ++s) {
    const double t = (s + 0.5) / kSteps;
    fmt::format_to(std::back_inserter(svg), "<rect x=\"{:.1f}\" y=\"{:.2f}\" width=\"{:.1f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                   lx, top + plot - (s + 1) * plot / kSteps, legend_w, plot / kSteps,
                   colour(legend_lo + t * (legend_hi - legend_lo)));
  }
  svg += "</g>\n";
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n", lx + legend_w + 4,
                 top + 10, number(legend_hi));
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n", lx + legend_w + 4,
                 top + plot, number(legend_lo));
  svg += "</svg>\n";
  return svg;
}

}  // namespace meso
