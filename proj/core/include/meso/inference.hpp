#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "meso/graph.hpp"
#include "meso/matrix.hpp"
#include "meso/random.hpp"

namespace meso {

// dc-SBM rates relative to the configuration model: the expected number of
// edges between groups a and b is omega_ab T_a T_b / 2E.
using OmegaMatrix = SquareMatrix<double>;

struct LogLikelihood {
  double value = 0.0;
  // Some block has S_ab > 0 but omega_ab = 0; value is -infinity.
  bool impossible_model = false;
};

// Block form of the undirected dc-SBM log-likelihood
//   (1/2) sum_ab ( S_ab log omega_ab - T_a T_b omega_ab / 2E ),
// taking 0 log 0 = 0.
LogLikelihood dcsbm_log_likelihood(const BlockSummary& bs, const OmegaMatrix& omega);

// Maximum-likelihood rates omega_ab = 2E S_ab / (T_a T_b). Rows and columns
// of groups with T_a = 0 are set to 0.
OmegaMatrix estimate_omega(const BlockSummary& bs);
// Groups with T_a = 0 (estimate_omega leaves their rates at 0).
std::vector<std::size_t> degenerate_groups(const BlockSummary& bs);

// Block weights and null scalings that turn block modularity into the
// dc-SBM likelihood: B_ab = log omega_ab, gamma_ab = omega_ab / log omega_ab.
// At omega_ab = 1 the weight is 0 and gamma is +infinity (the product
// B_ab gamma_ab = omega_ab stays finite; see bridged_block_modularity).
struct ModularityBridge {
  SquareMatrix<double> weights;
  SquareMatrix<double> gamma;
  std::size_t singular_entries = 0;
};
// Throws InputError when an entry is not strictly positive.
ModularityBridge modularity_bridge(const OmegaMatrix& omega);

// (1/2E) sum_ab [ B_ab S_ab - (B_ab gamma_ab) T_a T_b / 2E ] with the product
// taken as omega_ab, so it equals dcsbm_log_likelihood / E for every omega > 0.
double bridged_block_modularity(const BlockSummary& bs, const OmegaMatrix& omega);

// Null scaling that makes the planted-partition likelihood a block
// modularity: (w_in - w_out) / (log w_in - log w_out).
double planted_partition_gamma(double omega_in, double omega_out);
// omega_ab = w_in where pattern_ab = 1 and w_out where it is 0.
OmegaMatrix planted_partition_omega(const SquareMatrix<int>& pattern, double omega_in, double omega_out);

struct GreedyOptions {
  std::size_t restarts = 20;
  std::size_t max_sweeps = 100;
  RngSeed seed{};
};

struct InferenceResult {
  Partition partition;
  OmegaMatrix omega;
  double score = 0.0;  // dc-SBM log-likelihood at (partition, omega)
  std::size_t sweeps = 0;
  std::size_t restart = 0;
  // Score after each completed sweep of the winning restart.
  std::vector<double> sweep_scores;
};

// Greedy label-swap maximisation of the dc-SBM likelihood for fixed K.
// Each restart draws labels uniformly and omega_ab = 1 + 0.1 U(-1, 1); every
// sweep visits the nodes in a fresh random order and applies the relabeling
// with the largest strict score gain, re-estimating omega from the updated
// block counts for every candidate. Ties keep the current label, then
// prefer the lowest group index. Undirected graphs only.
InferenceResult greedy_optimize(const Graph& g, std::size_t k, const GreedyOptions& options);

// Experimental outer loop: optimise labels with omega held fixed, re-estimate
// omega, repeat until the partition stops changing or `rounds` is reached.
// Known to depend strongly on the starting omega.
InferenceResult alternating_optimize(const Graph& g, std::size_t k, const GreedyOptions& options,
                                     std::size_t rounds = 50);

// Normalised mutual information 2 I(X;Y) / (H(X) + H(Y)); 1 when both
// partitions are trivial.
double normalized_mutual_information(const Partition& x, const Partition& y);

enum class StructureLabel { Community = 0, Bipartite = 1, CorePeriphery = 2 };
inline constexpr std::array<StructureLabel, 3> kStructureLabels = {
    StructureLabel::Community, StructureLabel::Bipartite, StructureLabel::CorePeriphery};
std::string_view to_string(StructureLabel label);

inline constexpr double kDefaultStructureThreshold = 0.5;

struct PairStructure {
  std::size_t a = 0, b = 0;
  bool mass_dominant = false;  // S_aa + 2 S_ab + S_bb > E
  bool community = false;      // omega_ab < f min(omega_aa, omega_bb)
  bool bipartite = false;      // f omega_ab > max(omega_aa, omega_bb)
  bool core_periphery = false;  // min(diag) < f omega_ab and min(diag) < f max(diag)

  bool has(StructureLabel label) const;
};

// Applies the 2x2 structure rules to every unordered group pair. Pairs that
// hold at most half of the edges get no labels. Requires K >= 2, 0 < f <= 1.
std::vector<PairStructure> classify_structures(const BlockSummary& bs, const OmegaMatrix& omega,
                                               double f = kDefaultStructureThreshold);

struct CensusOptions {
  std::size_t samples = 1000;
  double threshold = kDefaultStructureThreshold;
  std::size_t swaps_per_edge = 20;
  std::size_t restarts = 20;
  std::size_t max_sweeps = 100;
  std::size_t threads = 1;
  RngSeed seed{};
};

struct Census {
  std::size_t samples = 0;
  // Samples in which at least one pair carries the label, by StructureLabel.
  std::array<std::size_t, 3> counts{};

  double proportion(StructureLabel label) const;
};

// For each degree-preserving sample of g: infer a K-group dc-SBM and record
// which structures appear on any pair. Sample i uses derive_seed(seed, i).
Census ensemble_census(const Graph& g, std::size_t k, const CensusOptions& options);

}  // namespace meso
