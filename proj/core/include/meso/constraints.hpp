#pragma once

#include <cstddef>

#include "meso/graph.hpp"
#include "meso/null_models.hpp"

namespace meso {

// Edge counts around a pair of groups (a, b). "rest" is every other group.
// Values are doubles so that expected counts (probability x possible pairs)
// can be fed through the same predicates as observed integer counts.
//
// Undirected: s_ab = s_ba is the number of a-b edges, s_aa / s_bb are twice
// the internal edge counts, s_a_rest = s_rest_a links a to the rest, and
// s_rest is twice the number of edges in and between the other groups, so
//   2E = s_aa + s_bb + 2 (s_ab + s_a_rest + s_b_rest) + s_rest.
// Directed: every count is of edges in the stated direction, s_rest counts
// each rest-internal edge once and E is the plain sum of the nine counts.
struct PairContext {
  bool directed = false;
  double s_aa = 0, s_bb = 0;
  double s_ab = 0, s_ba = 0;
  double s_a_rest = 0, s_rest_a = 0;
  double s_b_rest = 0, s_rest_b = 0;
  double s_rest = 0;
  // Only the ER null uses these.
  double n_a = 0, n_b = 0, n_total = 0;
  // Group indices, used to look up block-scaled gammas.
  std::size_t a = 0, b = 1;

  // Hand-built undirected context (b-side and rest links mirrored).
  static PairContext undirected(double s_aa, double s_bb, double s_ab, double s_a_rest, double s_b_rest,
                                double s_rest);
  // Hand-built directed context without links to the rest of the network.
  static PairContext directed_isolated(double s_aa, double s_bb, double s_ab, double s_ba, double s_rest);

  // 2E undirected, E directed, reconstructed from the counts.
  double total_mass() const;
  // Degree totals of a and b (out/in separately when directed).
  double t_out_a() const { return s_aa + s_ab + s_a_rest; }
  double t_out_b() const { return s_bb + s_ba + s_b_rest; }
  double t_in_a() const { return s_aa + s_ba + s_rest_a; }
  double t_in_b() const { return s_bb + s_ab + s_rest_b; }
  // True when neither group touches the rest of the network.
  bool isolated_pair() const { return s_a_rest == 0 && s_rest_a == 0 && s_b_rest == 0 && s_rest_b == 0; }
};

PairContext pair_context(const BlockSummary& bs, std::size_t a, std::size_t b);

// Outcome of a strict inequality lhs > rhs. Boundary is the exact tie.
enum class Sign { Negative = -1, Boundary = 0, Positive = 1 };

Sign compare(double lhs, double rhs);
Sign sign_of(double value);

enum class BlockEntry { Within /* Q_aa */, Between /* Q_ab */ };

// Predicts the sign of Q_aa or Q_ab from the pair context alone, using the
// rearranged detectability inequality for the chosen null:
//   Configuration, undirected:
//     Q_aa > 0  <=>  S_aa S_** > (S_ab + S_a*)^2 - S_aa (S_bb + 2 S_b*)
//     Q_ab > 0  <=>  S_ab S_** > (S_aa + S_a*)(S_bb + S_b*) - S_ab (S_ab + S_a* + S_b*)
//   Configuration, directed (reduces to S_aa S_** > S_ab S_ba - S_aa S_bb and
//   S_ab S_** > S_aa S_bb - S_ab S_ba for an isolated pair):
//     Q_aa > 0  <=>  S_aa S_** > (S_ab + S_a*)(S_ba + S_*a) - S_aa (S_bb + S_b* + S_*b)
//     Q_ab > 0  <=>  S_ab S_** > (S_aa + S_a*)(S_bb + S_*b) - S_ab (S_ba + S_*a + S_b*)
//   ER: S_xy / 2E > N_x N_y / N^2.
//   Scaled / block-scaled: S_xy S_** > gamma T_x T_y - S_xy (2E - S_**).
// Throws UnsupportedError where expected_blocks would.
Sign q_sign(const PairContext& ctx, BlockEntry which, const NullModel& null);

// Core a, periphery b. For an ideal pair (empty periphery, no outside links)
// this is S_cc S_** > S_cp^2 (S_cp S_pc when directed); otherwise the full
// Q_cc sign under the configuration null.
Sign cp_detectable(const PairContext& ctx);

// Community hierarchy with flow a -> b. Ideal pair (S_ba = 0, no outside
// links): S_ab S_** > S_aa S_bb; otherwise the full directed Q_ab sign.
Sign ch_detectable(const PairContext& ctx);

// Bipartite core-core term with the two peripheries as the rest:
// S_ca,cb (S_ca,cb + S_ca,pb + S_cb,pa) > S_ca,pb S_cb,pa.
Sign nested_core_detectable(double s_ca_cb, double s_ca_pb, double s_cb_pa);

// Positive iff merging a and b raises Q: S_ab > T_a T_b / 2E. Undirected.
Sign resolution_merge_preferred(const PairContext& ctx);

}  // namespace meso
