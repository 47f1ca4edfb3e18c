#include "meso/patterns.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

std::vector<BlockMatrix> enumerate_patterns(std::size_t k, bool directed) {
  if (k == 0 || k > kMaxEnumeratedGroups)
    throw InputError(fmt::format("pattern enumeration supports 1 <= K <= {}", kMaxEnumeratedGroups));
  std::vector<std::pair<std::size_t, std::size_t>> free_entries;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = directed ? 0 : a; b < k; ++b) free_entries.emplace_back(a, b);

  const std::size_t count = std::size_t{1} << free_entries.size();
  std::vector<BlockMatrix> out;
  out.reserve(count);
  std::vector<int> entries(k * k);
  for (std::size_t code = 0; code < count; ++code) {
    for (std::size_t j = 0; j < free_entries.size(); ++j) {
      const auto [a, b] = free_entries[j];
      const int v = (code >> j) & 1U ? -1 : 1;
      entries[a * k + b] = v;
      entries[b * k + a] = directed ? entries[b * k + a] : v;
    }
    out.emplace_back(k, entries, directed);
  }
  return out;
}

bool admissible_under_configuration(const BlockMatrix& b) {
  const std::size_t k = b.size();
  for (std::size_t a = 0; a < k; ++a) {
    bool row_mixed = false;
    bool col_mixed = false;
    for (std::size_t c = 1; c < k; ++c) {
      row_mixed = row_mixed || b(a, c) != b(a, 0);
      col_mixed = col_mixed || b(c, a) != b(0, a);
    }
    if (!row_mixed || !col_mixed) return false;
  }
  return true;
}

std::string_view to_string(PatternLabel label) {
  switch (label) {
    case PatternLabel::Community: return "community";
    case PatternLabel::Bipartite: return "bipartite";
    case PatternLabel::CorePeriphery: return "core-periphery";
    case PatternLabel::SourceBasin: return "source-basin";
    case PatternLabel::BasinDelta: return "basin-delta";
    case PatternLabel::CommunityHierarchy: return "community-hierarchy";
    case PatternLabel::Uniform: return "uniform";
    case PatternLabel::Other: return "other";
  }
  return "?";
}

PatternClass classify_2x2(const BlockMatrix& b, bool directed) {
  if (b.size() != 2) throw InputError("classify_2x2 needs a 2x2 pattern");
  if (!directed && b(0, 1) != b(1, 0)) throw InputError("undirected pattern must be symmetric");
  const bool dense0 = b(0, 0) > 0;
  const bool dense1 = b(1, 1) > 0;
  const bool flow01 = b(0, 1) > 0;
  const bool flow10 = b(1, 0) > 0;

  if (dense0 == dense1 && flow01 == flow10 && dense0 == flow01) return {PatternLabel::Uniform, -1, false};
  if (dense0 && dense1 && !flow01 && !flow10) return {PatternLabel::Community, -1, true};
  if (!dense0 && !dense1 && flow01 && flow10) return {PatternLabel::Bipartite, -1, true};
  if (flow01 && flow10 && dense0 != dense1) return {PatternLabel::CorePeriphery, dense0 ? 0 : 1, true};
  if (flow01 != flow10) {
    const int source = flow01 ? 0 : 1;
    const bool source_dense = source == 0 ? dense0 : dense1;
    const bool sink_dense = source == 0 ? dense1 : dense0;
    if (source_dense && sink_dense) return {PatternLabel::CommunityHierarchy, source, true};
    if (!source_dense && sink_dense) return {PatternLabel::SourceBasin, source, true};
    if (source_dense && !sink_dense) return {PatternLabel::BasinDelta, source, true};
  }
  return {PatternLabel::Other, -1, false};
}

std::string pattern_bits(const BlockMatrix& b) {
  std::string s;
  s.reserve(b.entries().size());
  for (int v : b.entries()) s += v > 0 ? '1' : '0';
  return s;
}

BlockMatrix canonical_form(const BlockMatrix& b) {
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  BlockMatrix best = b;
  std::string best_bits = pattern_bits(b);
  do {
    auto candidate = b.permuted(perm);
    auto bits = pattern_bits(candidate);
    if (bits < best_bits) {
      best_bits = std::move(bits);
      best = std::move(candidate);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace meso
