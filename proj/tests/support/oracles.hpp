#pragma once

// Reference implementations used only by tests. Everything here works on a
// dense adjacency matrix with plain loops, deliberately sharing no code with
// the library's block-level formulas.

#include <cstdint>
#include <random>
#include <vector>

#include "meso/graph.hpp"
#include "meso/null_models.hpp"

namespace oracle {

struct Dense {
  std::size_t n = 0;
  bool directed = false;
  std::vector<std::vector<int>> a;  // a[i][j] = A_ij; symmetric when undirected

  std::int64_t out_degree(std::size_t i) const;
  std::int64_t in_degree(std::size_t j) const;
  // 2E undirected, E directed: sum of all entries.
  std::int64_t mass() const;
};

Dense dense(const meso::Graph& g);

// Brute-force S_ab over all ordered node pairs.
std::vector<std::vector<std::int64_t>> block_sums(const Dense& d, const std::vector<std::uint32_t>& labels,
                                                  std::size_t k);

// Node-pair null expectation P_ij.
double pair_expectation(const Dense& d, const meso::NullModel& null, const std::vector<std::uint32_t>& labels,
                        std::size_t i, std::size_t j);

// (1 / mass) sum_ij W_{c(i) c(j)} (A_ij - P_ij), summing every ordered pair.
double pairwise_modularity(const Dense& d, const std::vector<std::uint32_t>& labels,
                           const std::vector<std::vector<double>>& weights, const meso::NullModel& null);

// Direct Q_xy = sum over i in x, j in y of (A_ij - P_ij).
double pairwise_q(const Dense& d, const std::vector<std::uint32_t>& labels, std::uint32_t x, std::uint32_t y,
                  const meso::NullModel& null);

// Exact sign of Q_xy for nulls whose scalings are rationals num/den; the
// comparison is done entirely in integers. gamma_num/gamma_den are ignored
// for Configuration and ER.
int exact_q_sign(const Dense& d, const std::vector<std::uint32_t>& labels, std::uint32_t x, std::uint32_t y,
                 meso::NullKind kind, std::int64_t gamma_num, std::int64_t gamma_den);

// NODF on [0, 1]: rows and columns each sorted by decreasing marginal, then
// every pair earlier/later in the order scores overlap / later total when the
// earlier total is strictly larger and the later one is non-zero.
double nodf(const std::vector<std::vector<int>>& m);

// Undirected dc-SBM log-likelihood from brute-force block sums.
double dcsbm_log_likelihood(const Dense& d, const std::vector<std::uint32_t>& labels, std::size_t k,
                            const std::vector<std::vector<double>>& omega);

// Profile likelihood (omega at its maximum) of a labelling.
double profile_log_likelihood(const Dense& d, const std::vector<std::uint32_t>& labels, std::size_t k);

// --- seeded test corpus -------------------------------------------------

struct Case {
  meso::Graph graph;
  std::vector<std::uint32_t> labels;
  std::size_t k = 0;
  meso::Partition partition() const { return meso::Partition(labels, k); }
};

// Erdos-Renyi graph on n nodes with edge probability p, at least one edge.
meso::Graph random_graph(std::mt19937_64& rng, std::size_t n, double p, bool directed);
std::vector<std::uint32_t> random_labels(std::mt19937_64& rng, std::size_t n, std::size_t k);

// `count` (graph, partition) pairs: N in [min_n, max_n], K in [2, 5], the
// two directednesses alternating. Deterministic in `seed`.
std::vector<Case> corpus(std::uint64_t seed, std::size_t count, std::size_t min_n = 4, std::size_t max_n = 60);

// Ring-of-cliques style instance with E = 100: groups a (label 0) and b
// (label 1) each hold l internal edges, one edge joins a and b, one joins each
// of them to the rest (label 2), which holds the remaining 97 - 2l edges.
// Requires 1 <= l <= 48.
Case resolution_instance(std::size_t l);

}  // namespace oracle
