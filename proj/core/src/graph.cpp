#include "meso/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

// Calls fn(line_number, tokens) for every non-blank, non-comment line.
template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    const auto line = trim(text.substr(pos, nl - pos));
    if (!line.empty() && line.front() != '#') fn(line_no, tokens(line));
    if (nl == text.size()) break;
    pos = nl + 1;
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_pair(std::size_t line_no,
                                                   const std::vector<std::string_view>& toks,
                                                   std::string_view what) {
  if (toks.size() != 2) throw ParseError(fmt::format("expected two integers ({})", what), line_no);
  const auto a = parse_uint(toks[0]);
  const auto b = parse_uint(toks[1]);
  if (!a || !b) throw ParseError(fmt::format("expected two non-negative integers ({})", what), line_no);
  return {*a, *b};
}

constexpr std::uint64_t kMaxNodeId = std::numeric_limits<NodeId>::max() - 1;

}  // namespace

// --- Graph ------------------------------------------------------------------

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, bool directed)
    : directed_(directed), node_count_(node_count) {
  for (auto& e : edges) {
    if (e.source >= node_count || e.target >= node_count)
      throw InputError(fmt::format("edge ({}, {}) references a node outside 0..{}", e.source, e.target,
                                   node_count == 0 ? 0 : node_count - 1));
    if (e.source == e.target) throw InputError(fmt::format("self-loop on node {} is not supported", e.source));
    if (!directed && e.source > e.target) std::swap(e.source, e.target);
  }
  std::sort(edges.begin(), edges.end());
  const auto unique_end = std::unique(edges.begin(), edges.end());
  duplicates_ = static_cast<std::size_t>(std::distance(unique_end, edges.end()));
  edges.erase(unique_end, edges.end());
  edges_ = std::move(edges);

  build_csr(node_count_, edges_, false, !directed_, out_offsets_, out_targets_);
  if (directed_) build_csr(node_count_, edges_, true, false, in_offsets_, in_targets_);
}

void Graph::build_csr(std::size_t n, std::span<const Edge> edges, bool reverse, bool both,
                      std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++offsets[(reverse ? e.target : e.source) + 1];
    if (both) ++offsets[e.target + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.assign(offsets.back(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    const NodeId from = reverse ? e.target : e.source;
    const NodeId to = reverse ? e.source : e.target;
    targets[cursor[from]++] = to;
    if (both) targets[cursor[to]++] = from;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
}

std::span<const NodeId> Graph::out_neighbors(NodeId v) const {
  if (v >= node_count_) throw InputError(fmt::format("node {} out of range", v));
  return std::span<const NodeId>(out_targets_).subspan(out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]);
}

std::span<const NodeId> Graph::in_neighbors(NodeId v) const {
  if (!directed_) return out_neighbors(v);
  if (v >= node_count_) throw InputError(fmt::format("node {} out of range", v));
  return std::span<const NodeId>(in_targets_).subspan(in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
}

std::vector<std::size_t> Graph::out_degrees() const {
  std::vector<std::size_t> d(node_count_);
  for (NodeId v = 0; v < node_count_; ++v) d[v] = out_degree(v);
  return d;
}

std::vector<std::size_t> Graph::in_degrees() const {
  std::vector<std::size_t> d(node_count_);
  for (NodeId v = 0; v < node_count_; ++v) d[v] = in_degree(v);
  return d;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count_ || v >= node_count_) return false;
  const auto nbrs = out_neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

// --- Partition --------------------------------------------------------------

Partition::Partition(std::vector<GroupId> labels, std::size_t group_count)
    : labels_(std::move(labels)), group_count_(group_count), sizes_(group_count, 0) {
  if (group_count_ == 0) throw InputError("a partition needs at least one group");
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] >= group_count_)
      throw InputError(fmt::format("node {} has label {} outside 0..{}", v, labels_[v], group_count_ - 1));
    ++sizes_[labels_[v]];
  }
}

Partition Partition::from_labels(std::vector<GroupId> labels) {
  const std::size_t k = labels.empty() ? 1 : *std::max_element(labels.begin(), labels.end()) + std::size_t{1};
  return Partition(std::move(labels), k);
}

// --- BlockSummary -----------------------------------------------------------

std::int64_t BlockSummary::node_count() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
}

BlockSummary block_summary(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count())
    throw InputError(fmt::format("partition covers {} nodes but the graph has {}", p.node_count(), g.node_count()));
  const std::size_t k = p.group_count();
  BlockSummary bs;
  bs.directed = g.directed();
  bs.edge_count = static_cast<std::int64_t>(g.edge_count());
  bs.sizes.assign(p.sizes().begin(), p.sizes().end());
  bs.counts = SquareMatrix<std::int64_t>(k, 0);
  for (const auto& e : g.edges()) {
    const auto a = p.label(e.source);
    const auto b = p.label(e.target);
    ++bs.counts(a, b);
    if (!g.directed()) ++bs.counts(b, a);
  }
  bs.t_out.assign(k, 0);
  bs.t_in.assign(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      bs.t_out[a] += bs.counts(a, b);
      bs.t_in[b] += bs.counts(a, b);
    }
  }
  return bs;
}

// --- text I/O ---------------------------------------------------------------

Graph load_edge_list(std::string_view text, bool directed) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& toks) {
    const auto [u, v] = parse_pair(line_no, toks, "edge");
    if (u > kMaxNodeId || v > kMaxNodeId) throw ParseError("node id too large", line_no);
    if (u == v) throw InputError(fmt::format("line {}: self-loop on node {} is not supported", line_no, u));
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    max_id = std::max({max_id, u, v});
    any = true;
  });
  const std::size_t n = any ? static_cast<std::size_t>(max_id) + 1 : 0;
  return Graph(n, std::move(edges), directed);
}

Graph read_edge_list_file(const std::filesystem::path& path, bool directed) {
  return load_edge_list(read_text_file(path), directed);
}

std::string format_edge_list(const Graph& g) {
  std::string out;
  out.reserve(g.edge_count() * 12);
  for (const auto& e : g.edges()) fmt::format_to(std::back_inserter(out), "{} {}\n", e.source, e.target);
  return out;
}

void write_edge_list_file(const Graph& g, const std::filesystem::path& path) {
  write_text_file(path, format_edge_list(g));
}

RelabeledEdgeList relabel_edge_list(std::string_view text) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& toks) {
    raw.push_back(parse_pair(line_no, toks, "edge"));
  });
  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::uint64_t id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  RelabeledEdgeList r;
  for (const auto& [u, v] : raw) fmt::format_to(std::back_inserter(r.edge_list), "{} {}\n", dense(u), dense(v));
  r.original_ids = std::move(ids);
  return r;
}

std::string format_id_map(const RelabeledEdgeList& r) {
  std::string out;
  for (std::size_t i = 0; i < r.original_ids.size(); ++i)
    fmt::format_to(std::back_inserter(out), "{} {}\n", i, r.original_ids[i]);
  return out;
}

Partition load_partition(std::string_view text, std::size_t node_count) {
  constexpr GroupId kUnset = std::numeric_limits<GroupId>::max();
  std::vector<GroupId> labels(node_count, kUnset);
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& toks) {
    const auto [node, group] = parse_pair(line_no, toks, "node group");
    if (node >= node_count) throw ParseError(fmt::format("node {} outside 0..{}", node, node_count - 1), line_no);
    if (group >= kUnset) throw ParseError("group id too large", line_no);
    if (labels[node] != kUnset) throw ParseError(fmt::format("node {} assigned twice", node), line_no);
    labels[node] = static_cast<GroupId>(group);
  });
  for (std::size_t v = 0; v < node_count; ++v)
    if (labels[v] == kUnset) throw InputError(fmt::format("partition has no group for node {}", v));
  return Partition::from_labels(std::move(labels));
}

Partition read_partition_file(const std::filesystem::path& path, std::size_t node_count) {
  return load_partition(read_text_file(path), node_count);
}

std::string format_partition(const Partition& p) {
  std::string out;
  for (std::size_t v = 0; v < p.node_count(); ++v)
    fmt::format_to(std::back_inserter(out), "{} {}\n", v, p.label(static_cast<NodeId>(v)));
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace meso
