#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "meso/graph.hpp"

namespace meso {

// Binary rows x cols incidence matrix of a bipartite graph.
class BiAdjacency {
 public:
  BiAdjacency(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> cells);
  BiAdjacency(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c] != 0; }
  std::span<const std::size_t> row_totals() const noexcept { return row_totals_; }
  std::span<const std::size_t> col_totals() const noexcept { return col_totals_; }

  BiAdjacency transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<std::size_t> row_totals_;
  std::vector<std::size_t> col_totals_;
};

// Rows are `left` in ascending id order, columns the remaining nodes in
// ascending order. Throws InputError if an edge joins two nodes on one side.
BiAdjacency from_bipartite(const Graph& g, std::span<const NodeId> left);

// NODF on a 0..1 scale. Every unordered pair of rows with totals t_i > t_j > 0
// scores |ones(i) & ones(j)| / t_j, pairs with equal or zero totals score 0;
// columns likewise. The sum is divided by r(r-1)/2 + c(c-1)/2. Throws
// DegenerateError for an all-zero matrix or one with fewer than two rows and
// two columns.
double nodf(const BiAdjacency& m);

}  // namespace meso
