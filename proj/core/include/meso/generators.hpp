#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "meso/graph.hpp"
#include "meso/matrix.hpp"
#include "meso/random.hpp"

namespace meso {

struct SbmSpec {
  std::vector<std::size_t> sizes;     // nodes per group, contiguous ids
  SquareMatrix<double> probabilities;  // edge probability per block
  bool directed = false;

  void validate() const;
};

struct PlantedGraph {
  Graph graph;
  Partition partition;
};

// Each pair i < j (each ordered pair i != j when directed) becomes an edge
// independently with probability probabilities(c(i), c(j)). Pairs are drawn
// in lexicographic order from a single Rng stream.
PlantedGraph sbm_generate(const SbmSpec& spec, RngSeed seed);

inline constexpr std::size_t kDefaultSwapsPerEdge = 20;

// Degree-preserving randomisation by double-edge swaps: swaps_per_edge * E
// attempts, each rejected if it would create a self-loop or a repeated edge.
// Directed swaps exchange targets, keeping in- and out-degrees.
Graph configuration_sample(const Graph& g, RngSeed seed, std::size_t swaps_per_edge = kDefaultSwapsPerEdge);

// Three-group network with core, periphery and a separate community:
// omega = [[0.6, 0.5, 0], [0.5, 0, 0], [0, 0, 0.2]].
SbmSpec planted_core_periphery_spec(std::size_t group_size = 30);
PlantedGraph planted_core_periphery_network(RngSeed seed, std::size_t group_size = 30);

}  // namespace meso
