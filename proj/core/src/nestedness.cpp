#include "meso/nestedness.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

BiAdjacency::BiAdjacency(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)), row_totals_(rows, 0), col_totals_(cols, 0) {
  if (cells_.size() != rows_ * cols_) throw InputError("bi-adjacency cell count does not match its shape");
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      auto& cell = cells_[r * cols_ + c];
      if (cell > 1) throw InputError("bi-adjacency entries must be 0 or 1");
      row_totals_[r] += cell;
      col_totals_[c] += cell;
    }
  }
}

BiAdjacency::BiAdjacency(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<std::uint8_t> cells;
  for (const auto& row : rows) {
    if (row.size() != c) throw InputError("bi-adjacency rows must have equal length");
    for (int v : row) {
      if (v != 0 && v != 1) throw InputError("bi-adjacency entries must be 0 or 1");
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  *this = BiAdjacency(r, c, std::move(cells));
}

BiAdjacency BiAdjacency::transposed() const {
  std::vector<std::uint8_t> cells(cells_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) cells[c * rows_ + r] = cells_[r * cols_ + c];
  return BiAdjacency(cols_, rows_, std::move(cells));
}

BiAdjacency from_bipartite(const Graph& g, std::span<const NodeId> left) {
  const std::size_t n = g.node_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<bool> is_left(n, false);
  for (NodeId v : left) {
    if (v >= n) throw InputError(fmt::format("left node {} outside the graph", v));
    is_left[v] = true;
  }
  std::vector<std::size_t> row_of(n, kNone), col_of(n, kNone);
  std::size_t rows = 0, cols = 0;
  for (std::size_t v = 0; v < n; ++v) (is_left[v] ? row_of[v] = rows++ : col_of[v] = cols++);

  std::vector<std::uint8_t> cells(rows * cols, 0);
  for (const auto& e : g.edges()) {
    if (is_left[e.source] == is_left[e.target])
      throw InputError(fmt::format("edge ({}, {}) joins two nodes on the same side; graph is not bipartite", e.source,
                                   e.target));
    const NodeId l = is_left[e.source] ? e.source : e.target;
    const NodeId r = is_left[e.source] ? e.target : e.source;
    cells[row_of[l] * cols + col_of[r]] = 1;
  }
  return BiAdjacency(rows, cols, std::move(cells));
}

namespace {

// Sum of paired-overlap scores over all unordered pairs along one axis.
// line(i, k) reads cell k of row (or column) i.
template <typename Cell>
double paired_overlap(std::size_t lines, std::size_t length, std::span<const std::size_t> totals, Cell cell) {
  double sum = 0.0;
  for (std::size_t i = 0; i < lines; ++i) {
    for (std::size_t j = i + 1; j < lines; ++j) {
      std::size_t hi = i, lo = j;
      if (totals[hi] < totals[lo]) std::swap(hi, lo);
      if (totals[hi] == totals[lo] || totals[lo] == 0) continue;
      std::size_t shared = 0;
      for (std::size_t k = 0; k < length; ++k) shared += cell(hi, k) && cell(lo, k);
      sum += static_cast<double>(shared) / static_cast<double>(totals[lo]);
    }
  }
  return sum;
}

}  // namespace

double nodf(const BiAdjacency& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (r < 2 && c < 2) throw DegenerateError("NODF needs at least two rows or two columns");
  const auto ones = std::accumulate(m.row_totals().begin(), m.row_totals().end(), std::size_t{0});
  if (ones == 0) throw DegenerateError("NODF is undefined for an all-zero matrix");
  const double row_part = paired_overlap(r, c, m.row_totals(), [&](std::size_t i, std::size_t k) { return m(i, k); });
  const double col_part = paired_overlap(c, r, m.col_totals(), [&](std::size_t i, std::size_t k) { return m(k, i); });
  const double pairs = static_cast<double>(r * (r - 1) / 2 + c * (c - 1) / 2);
  return (row_part + col_part) / pairs;
}

}  // namespace meso
