#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meso/matrix.hpp"

namespace meso {

using NodeId = std::uint32_t;
using GroupId = std::uint32_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  auto operator<=>(const Edge&) const = default;
};

// Simple graph on nodes 0..N-1, directed or undirected. Immutable once built.
//
// Undirected edges are stored once with source < target; neighbour lists hold
// both directions. Self-loops are rejected and repeated edges collapse (the
// number collapsed is kept in duplicates_collapsed()).
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t node_count, std::vector<Edge> edges, bool directed);

  bool directed() const noexcept { return directed_; }
  std::size_t node_count() const noexcept { return node_count_; }
  // E: number of edges (each undirected edge once).
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t duplicates_collapsed() const noexcept { return duplicates_; }

  // Undirected graphs return the same list from both.
  std::span<const NodeId> out_neighbors(NodeId v) const;
  std::span<const NodeId> in_neighbors(NodeId v) const;

  std::size_t out_degree(NodeId v) const { return out_neighbors(v).size(); }
  std::size_t in_degree(NodeId v) const { return in_neighbors(v).size(); }
  std::size_t degree(NodeId v) const { return out_degree(v); }

  std::vector<std::size_t> out_degrees() const;
  std::vector<std::size_t> in_degrees() const;

  bool has_edge(NodeId u, NodeId v) const;

 private:
  static void build_csr(std::size_t n, std::span<const Edge> edges, bool reverse, bool both,
                        std::vector<std::size_t>& offsets, std::vector<NodeId>& targets);

  bool directed_ = false;
  std::size_t node_count_ = 0;
  std::size_t duplicates_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_targets_;
};

// Assignment of every node to one of K groups. Groups may be empty.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<GroupId> labels, std::size_t group_count);
  // K = 1 + max label.
  static Partition from_labels(std::vector<GroupId> labels);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t group_count() const noexcept { return group_count_; }
  GroupId label(NodeId v) const { return labels_.at(v); }
  std::span<const GroupId> labels() const noexcept { return labels_; }
  std::span<const std::size_t> sizes() const noexcept { return sizes_; }

  bool operator==(const Partition&) const = default;

 private:
  std::vector<GroupId> labels_;
  std::size_t group_count_ = 0;
  std::vector<std::size_t> sizes_;
};

// Sufficient statistics of a (graph, partition) pair.
//
// S(a,b) = sum over i in a, j in b of A_ij. For undirected graphs S is
// symmetric and S(a,a) is twice the number of edges inside a, so the entries
// sum to 2E. For directed graphs S(a,b) counts edges a -> b and sums to E.
// t_out[a] = sum_b S(a,b), t_in[b] = sum_a S(a,b); they coincide when undirected.
struct BlockSummary {
  bool directed = false;
  std::int64_t edge_count = 0;
  std::vector<std::int64_t> sizes;
  SquareMatrix<std::int64_t> counts;
  std::vector<std::int64_t> t_out;
  std::vector<std::int64_t> t_in;

  std::size_t group_count() const noexcept { return sizes.size(); }
  std::int64_t node_count() const;
  // 2E undirected, E directed: the sum of all entries of S.
  std::int64_t total_mass() const noexcept { return directed ? edge_count : 2 * edge_count; }
  // Undirected degree total T_a.
  std::int64_t total(std::size_t a) const { return t_out.at(a); }
};

BlockSummary block_summary(const Graph& g, const Partition& p);

// --- text formats -----------------------------------------------------------
// Edge list: one "u v" pair per line, '#' starts a comment line, blank lines
// ignored. Written sorted by (u, v) with LF endings.

Graph load_edge_list(std::string_view text, bool directed);
Graph read_edge_list_file(const std::filesystem::path& path, bool directed);
std::string format_edge_list(const Graph& g);
void write_edge_list_file(const Graph& g, const std::filesystem::path& path);

// Maps arbitrary non-negative ids onto 0..N-1 in ascending id order.
struct RelabeledEdgeList {
  std::string edge_list;
  std::vector<std::uint64_t> original_ids;  // new id -> original id
};
RelabeledEdgeList relabel_edge_list(std::string_view text);
std::string format_id_map(const RelabeledEdgeList& r);

// Partition file: "node_id group_id" per line, every node exactly once.
Partition load_partition(std::string_view text, std::size_t node_count);
Partition read_partition_file(const std::filesystem::path& path, std::size_t node_count);
std::string format_partition(const Partition& p);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace meso
