#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "meso/block_modularity.hpp"

namespace meso {

// Largest K accepted by enumerate_patterns (2^16 directed patterns at K = 4).
inline constexpr std::size_t kMaxEnumeratedGroups = 4;

// All +-1 patterns for K groups: 2^(K(K+1)/2) symmetric ones, or 2^(K^2)
// when directed. Pattern i sets free entry j (row-major over the upper
// triangle, or over all entries when directed) to +1 iff bit j of i is 0, so
// index 0 is all +1.
std::vector<BlockMatrix> enumerate_patterns(std::size_t k, bool directed);

// True iff no row and no column is sign-uniform: the only patterns a
// configuration-null Q matrix (zero row and column sums) can reward.
bool admissible_under_configuration(const BlockMatrix& b);

enum class PatternLabel {
  Community,
  Bipartite,
  CorePeriphery,
  SourceBasin,
  BasinDelta,
  CommunityHierarchy,
  Uniform,
  Other,
};

std::string_view to_string(PatternLabel label);

struct PatternClass {
  PatternLabel label = PatternLabel::Other;
  // Core (CorePeriphery), source (SourceBasin/BasinDelta) or upstream group
  // (CommunityHierarchy); -1 when the class has no orientation.
  int oriented_group = -1;
  // false for names this library made up (Uniform, Other) rather than the
  // four directed classes and the undirected community/bipartite/CP names.
  bool established_name = true;
};

// Maps a 2x2 pattern onto the 2x2 taxonomy. Throws InputError unless K = 2.
PatternClass classify_2x2(const BlockMatrix& b, bool directed);

// Row-major string of K^2 characters, '1' for +1 and '0' for -1.
std::string pattern_bits(const BlockMatrix& b);

// Lexicographically smallest pattern_bits over all simultaneous row/column
// relabelings. Use it to compare patterns up to group relabeling.
BlockMatrix canonical_form(const BlockMatrix& b);

}  // namespace meso
