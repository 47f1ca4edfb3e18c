#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "meso/graph.hpp"
#include "meso/matrix.hpp"
#include "meso/null_models.hpp"

namespace meso {

// K x K pattern of +1 (excess of edges expected) and -1 (deficit expected).
// Undirected patterns must be symmetric.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(std::size_t k, std::vector<int> entries, bool directed);
  BlockMatrix(std::initializer_list<std::initializer_list<int>> rows, bool directed = false);

  // +1 on the diagonal, -1 elsewhere.
  static BlockMatrix community(std::size_t k);

  std::size_t size() const noexcept { return k_; }
  bool directed() const noexcept { return directed_; }
  int operator()(std::size_t a, std::size_t b) const { return entries_[a * k_ + b]; }
  std::span<const int> entries() const noexcept { return entries_; }

  BlockMatrix negated() const;
  // Simultaneously relabels rows and columns: result(a, b) = this(perm[a], perm[b]).
  BlockMatrix permuted(std::span<const std::size_t> perm) const;

  bool operator==(const BlockMatrix&) const = default;

 private:
  std::size_t k_ = 0;
  bool directed_ = false;
  std::vector<int> entries_;
};

// Reads K lines of K entries from {+1, -1, +, -, 1}.
BlockMatrix parse_block_matrix(std::string_view text, bool directed);
std::string format_block_matrix(const BlockMatrix& b);

struct QMatrix {
  SquareMatrix<double> values;  // S - S^P
  std::int64_t edge_count = 0;
  bool directed = false;

  std::size_t size() const noexcept { return values.size(); }
  // 2E undirected, E directed.
  double normalizer() const noexcept { return directed ? double(edge_count) : 2.0 * double(edge_count); }
};

QMatrix q_matrix(const BlockSummary& bs, const NullModel& null);

// (1/2E) sum_ab Q_ab B_ab, or (1/E) sum when directed.
double block_modularity(const QMatrix& q, const BlockMatrix& b);
// Same normalisation with arbitrary real weights in place of +-1.
double weighted_block_modularity(const QMatrix& q, const SquareMatrix<double>& weights);

// (1/2E) sum_a (S_aa - T_a^2 / 2E). Undirected only.
double newman_modularity(const BlockSummary& bs);

struct SumRules {
  std::vector<double> row;         // sum_b Q_ab
  std::vector<double> column;      // sum_a Q_ab
  double global = 0.0;             // sum_ab Q_ab
  std::vector<double> row_expected;     // what the null forces the row sums to be
  std::vector<double> column_expected;
  double global_expected = 0.0;    // NaN when the null leaves it free
};

// Observed row/column/global sums of Q together with the values each null
// model forces them to take:
//   Configuration: all zero.
//   ER: rows T_a - 2E N_a/N, global 0.
//   Scaled: rows T_a (1 - gamma), global 2E (1 - gamma).
//   Block-scaled: sum_b T_a T_b (1 - gamma_ab) / 2E.
SumRules sum_rules(const QMatrix& q, const NullModel& null, const BlockSummary& bs);

// K = 2 diagnostic. Under the configuration null every row of Q sums to
// zero, which forces Q(core-periphery) = Q(bipartite)/2, so the 2x2
// core-periphery pattern can never strictly beat the bipartite one.
struct CorePeripheryIdentity {
  double core_periphery = 0.0;  // Q([[1,1],[1,-1]])
  double bipartite = 0.0;       // Q([[-1,1],[1,-1]])
  double residual = 0.0;        // core_periphery - bipartite / 2
};
CorePeripheryIdentity core_periphery_identity(const QMatrix& q);

}  // namespace meso
