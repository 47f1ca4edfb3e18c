#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "meso/errors.hpp"
#include "meso/patterns.hpp"

using namespace meso;

namespace {

// Independent filter: scan rows and columns for a repeated sign.
bool has_uniform_line(const BlockMatrix& b) {
  const std::size_t k = b.size();
  for (std::size_t i = 0; i < k; ++i) {
    bool row_same = true, col_same = true;
    for (std::size_t j = 1; j < k; ++j) {
      row_same = row_same && b(i, j) == b(i, 0);
      col_same = col_same && b(j, i) == b(0, i);
    }
    if (row_same || col_same) return true;
  }
  return false;
}

std::size_t count_admissible(std::size_t k, bool directed) {
  const auto all = enumerate_patterns(k, directed);
  return static_cast<std::size_t>(std::count_if(all.begin(), all.end(), admissible_under_configuration));
}

}  // namespace

TEST(EnumeratePatterns, Counts) {
  EXPECT_EQ(enumerate_patterns(2, false).size(), 8u);
  EXPECT_EQ(enumerate_patterns(2, true).size(), 16u);
  EXPECT_EQ(enumerate_patterns(3, false).size(), 64u);
  EXPECT_EQ(enumerate_patterns(3, true).size(), 512u);
  EXPECT_EQ(enumerate_patterns(4, false).size(), 1024u);
  EXPECT_EQ(enumerate_patterns(1, false).size(), 2u);
  EXPECT_THROW((void)enumerate_patterns(5, false), InputError);
  EXPECT_THROW((void)enumerate_patterns(0, false), InputError);
}

TEST(EnumeratePatterns, DistinctAndDeterministic) {
  for (bool directed : {false, true}) {
    const auto a = enumerate_patterns(3, directed);
    EXPECT_EQ(a, enumerate_patterns(3, directed));
    std::set<std::string> bits;
    for (const auto& p : a) {
      bits.insert(pattern_bits(p));
      if (!directed) {
        EXPECT_EQ(p, BlockMatrix(p.size(), std::vector<int>(p.entries().begin(), p.entries().end()), false));
      }
    }
    EXPECT_EQ(bits.size(), a.size());
  }
  EXPECT_EQ(pattern_bits(enumerate_patterns(2, false).front()), "1111");
}

TEST(Admissible, Examples) {
  EXPECT_TRUE(admissible_under_configuration(BlockMatrix({{1, -1}, {-1, 1}})));
  EXPECT_FALSE(admissible_under_configuration(BlockMatrix({{1, 1}, {1, -1}})));
  EXPECT_TRUE(admissible_under_configuration(BlockMatrix({{1, 1, -1}, {1, -1, -1}, {-1, -1, 1}})));
}

TEST(Admissible, TwoGroupsOnlyCommunityAndBipartite) {
  for (bool directed : {false, true}) {
    std::vector<PatternLabel> labels;
    for (const auto& p : enumerate_patterns(2, directed))
      if (admissible_under_configuration(p)) labels.push_back(classify_2x2(p, directed).label);
    std::sort(labels.begin(), labels.end());
    EXPECT_EQ(labels, (std::vector<PatternLabel>{PatternLabel::Community, PatternLabel::Bipartite}));
  }
}

TEST(Admissible, MatchesIndependentFilterAndFrozenCounts) {
  for (std::size_t k = 1; k <= 4; ++k)
    for (bool directed : {false, true}) {
      if (k == 4 && directed) continue;  // 65536 patterns; counted separately below
      for (const auto& p : enumerate_patterns(k, directed))
        ASSERT_EQ(admissible_under_configuration(p), !has_uniform_line(p)) << pattern_bits(p);
    }
  // Brute-force values, frozen.
  EXPECT_EQ(count_admissible(2, false), 2u);
  EXPECT_EQ(count_admissible(2, true), 2u);
  EXPECT_EQ(count_admissible(3, false), 26u);
  EXPECT_EQ(count_admissible(3, true), 102u);
  EXPECT_EQ(count_admissible(4, false), 594u);
  EXPECT_EQ(count_admissible(4, true), 22874u);
}

TEST(Admissible, InvariantUnderRelabeling) {
  for (bool directed : {false, true}) {
    std::vector<std::size_t> perm(3);
    for (const auto& p : enumerate_patterns(3, directed)) {
      std::iota(perm.begin(), perm.end(), 0);
      const bool base = admissible_under_configuration(p);
      do {
        ASSERT_EQ(admissible_under_configuration(p.permuted(perm)), base);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_2x2(BlockMatrix({{1, -1}, {-1, 1}}), false).label, PatternLabel::Community);
  EXPECT_EQ(classify_2x2(BlockMatrix({{-1, 1}, {1, -1}}), false).label, PatternLabel::Bipartite);

  const auto cp = classify_2x2(BlockMatrix({{1, 1}, {1, -1}}), false);
  EXPECT_EQ(cp.label, PatternLabel::CorePeriphery);
  EXPECT_EQ(cp.oriented_group, 0);
  EXPECT_EQ(classify_2x2(BlockMatrix({{-1, 1}, {1, 1}}), false).oriented_group, 1);

  const auto sb = classify_2x2(BlockMatrix({{-1, 1}, {-1, 1}}, true), true);
  EXPECT_EQ(sb.label, PatternLabel::SourceBasin);
  EXPECT_EQ(sb.oriented_group, 0);

  const auto bd = classify_2x2(BlockMatrix({{1, 1}, {-1, -1}}, true), true);
  EXPECT_EQ(bd.label, PatternLabel::BasinDelta);
  EXPECT_EQ(bd.oriented_group, 0);

  const auto ch = classify_2x2(BlockMatrix({{1, 1}, {-1, 1}}, true), true);
  EXPECT_EQ(ch.label, PatternLabel::CommunityHierarchy);
  EXPECT_EQ(ch.oriented_group, 0);

  const auto uni = classify_2x2(BlockMatrix({{1, 1}, {1, 1}}), false);
  EXPECT_EQ(uni.label, PatternLabel::Uniform);
  EXPECT_FALSE(uni.established_name);

  EXPECT_THROW((void)classify_2x2(BlockMatrix::community(3), false), InputError);
}

TEST(Classify, TotalOverAllDirectedPatterns) {
  std::size_t named = 0;
  for (const auto& p : enumerate_patterns(2, true)) {
    const auto c = classify_2x2(p, true);
    EXPECT_FALSE(to_string(c.label).empty());
    if (c.established_name) ++named;
    // Swapping the groups keeps the class and moves the orientation.
    const std::size_t swap[] = {1, 0};
    const auto s = classify_2x2(p.permuted(swap), true);
    EXPECT_EQ(s.label, c.label) << pattern_bits(p);
    if (c.oriented_group >= 0) {
      EXPECT_EQ(s.oriented_group, 1 - c.oriented_group);
    }
  }
  EXPECT_GT(named, 0u);
}

TEST(CanonicalForm, RelabelingInvariant) {
  std::vector<std::size_t> perm{0, 1, 2};
  const BlockMatrix b({{1, 1, -1}, {1, -1, -1}, {-1, -1, 1}});
  const auto canon = canonical_form(b);
  do {
    EXPECT_EQ(canonical_form(b.permuted(perm)), canon);
  } while (std::next_permutation(perm.begin(), perm.end()));
}
