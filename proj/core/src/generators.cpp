#include "meso/generators.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

void SbmSpec::validate() const {
  if (sizes.empty()) throw InputError("SBM needs at least one group");
  for (std::size_t a = 0; a < sizes.size(); ++a)
    if (sizes[a] == 0) throw InputError(fmt::format("SBM group {} is empty", a));
  if (probabilities.size() != sizes.size())
    throw InputError(fmt::format("SBM has {} groups but a {}x{} probability matrix", sizes.size(),
                                 probabilities.size(), probabilities.size()));
  for (double p : probabilities.values())
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("SBM probabilities must lie in [0, 1]");
  if (!directed && !probabilities.is_symmetric()) throw InputError("undirected SBM needs a symmetric matrix");
}

PlantedGraph sbm_generate(const SbmSpec& spec, RngSeed seed) {
  spec.validate();
  std::vector<GroupId> labels;
  for (std::size_t a = 0; a < spec.sizes.size(); ++a) labels.insert(labels.end(), spec.sizes[a], static_cast<GroupId>(a));
  const std::size_t n = labels.size();

  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = spec.directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      // Always consume a draw so zero/one blocks do not shift the stream.
      const bool hit = rng.bernoulli(spec.probabilities(labels[i], labels[j]));
      if (hit) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    }
  }
  Partition partition(std::move(labels), spec.sizes.size());
  return {Graph(n, std::move(edges), spec.directed), std::move(partition)};
}

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) { return (std::uint64_t{u} << 32) | v; }

}  // namespace

Graph configuration_sample(const Graph& g, RngSeed seed, std::size_t swaps_per_edge) {
  if (swaps_per_edge == 0) throw InputError("swaps_per_edge must be at least 1");
  const std::size_t m = g.edge_count();
  if (m < 2) throw InputError("degree-preserving swaps need at least two edges");

  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::unordered_set<std::uint64_t> present;
  present.reserve(2 * m);
  auto key = [&](NodeId u, NodeId v) {
    if (!g.directed() && u > v) std::swap(u, v);
    return edge_key(u, v);
  };
  for (const auto& e : edges) present.insert(key(e.source, e.target));

  Rng rng(seed);
  const std::size_t attempts = swaps_per_edge * m;
  for (std::size_t t = 0; t < attempts; ++t) {
    const auto i = static_cast<std::size_t>(rng.below(m));
    const auto j = static_cast<std::size_t>(rng.below(m));
    if (i == j) continue;
    NodeId a = edges[i].source, b = edges[i].target;
    NodeId c = edges[j].source, d = edges[j].target;
    // Undirected edges have no orientation; picking one at random makes both
    // rewirings (a-d, c-b) and (a-c, b-d) reachable.
    if (!g.directed() && rng.below(2) == 1) std::swap(c, d);
    // a-b, c-d  ->  a-d, c-b
    if (a == d || c == b) continue;
    if (present.contains(key(a, d)) || present.contains(key(c, b))) continue;
    present.erase(key(a, b));
    present.erase(key(c, d));
    present.insert(key(a, d));
    present.insert(key(c, b));
    edges[i] = {a, d};
    edges[j] = {c, b};
  }
  return Graph(g.node_count(), std::move(edges), g.directed());
}

SbmSpec planted_core_periphery_spec(std::size_t group_size) {
  return SbmSpec{{group_size, group_size, group_size},
                 SquareMatrix<double>{{0.6, 0.5, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, 0.2}},
                 false};
}

PlantedGraph planted_core_periphery_network(RngSeed seed, std::size_t group_size) {
  return sbm_generate(planted_core_periphery_spec(group_size), seed);
}

}  // namespace meso
