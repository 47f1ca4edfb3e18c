#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meso/block_modularity.hpp"
#include "meso/generators.hpp"
#include "meso/graph.hpp"
#include "meso/heatmap.hpp"
#include "meso/inference.hpp"
#include "meso/random.hpp"

namespace meso {

std::string_view library_version();

// Three-group patterns with groups (core, periphery, separate community).
BlockMatrix core_periphery_community_pattern();  // ((1,1,-1),(1,-1,-1),(-1,-1,1))
BlockMatrix bipartite_community_pattern();       // ((-1,1,-1),(1,-1,-1),(-1,-1,1))
// Four-group bipartite patterns with groups (core A, periphery A, core B, periphery B).
BlockMatrix nested_core_periphery_pattern();
BlockMatrix nested_bipartite_pattern();

// Probability grid (step, 2 step, ...) up to 1; with include_zero the grid
// starts at 0. Throws InputError unless 0 < step <= 1.
std::vector<double> probability_axis(double step, bool include_zero);

// --- core-periphery scan ----------------------------------------------------

struct ScanCpConfig {
  std::vector<double> p_m_values{0.2, 0.5, 0.8};
  double step = 0.05;
  std::size_t group_size = 30;
  std::size_t reps = 20;
  RngSeed seed{};
  std::size_t threads = 1;
};

struct CellStats {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t samples = 0;  // reps that produced a defined value
};

// Mean over `reps` SBM graphs (omega = [[p_c, p_p, 0], [p_p, 0, 0], [0, 0, p_m]],
// `n` nodes per group) of Q_CP - Q_Bipartite under the configuration null and
// the planted partition. Rep r uses derive_seed(seed, r).
CellStats cp_scan_cell(double p_p, double p_c, double p_m, std::size_t n, std::size_t reps, RngSeed seed);

struct CpScan {
  double p_m = 0.0;
  HeatmapGrid grid;  // x = p_p, y = p_c, value = mean difference
  std::vector<double> stddev;  // same layout as grid.values
  std::vector<std::pair<double, double>> boundary;  // p_c = p_p^2 / p_m, clipped to p_c <= 1
};

// Cell (i_pm, i_pc, i_pp) is seeded with derive_seed(seed, flat index).
std::vector<CpScan> run_scan_cp(const ScanCpConfig& cfg);
std::string format_scan_cp_csv(const ScanCpConfig& cfg, const std::vector<CpScan>& scans);

// --- nested bipartite scan --------------------------------------------------

struct ScanNestedConfig {
  double step = 0.05;
  std::size_t core_size = 10;
  std::size_t periphery_size = 25;
  std::size_t reps = 20;
  RngSeed seed{};
  std::size_t threads = 1;
};

struct NestedCellStats {
  CellStats q_core_periphery;
  CellStats q_bipartite;
  CellStats difference;  // Q_CP - Q_Bipartite
  CellStats nodf;
};

// Bipartite SBM with groups (core A, periphery A, core B, periphery B) of
// sizes (core, periphery, core, periphery): cores meet with p_cc, each core
// meets the other side's periphery with p_cp. NODF is taken on the
// (A side) x (B side) incidence matrix.
SbmSpec nested_bipartite_spec(double p_cp, double p_cc, std::size_t core, std::size_t periphery);
NestedCellStats nested_scan_cell(double p_cp, double p_cc, std::size_t core, std::size_t periphery,
                                 std::size_t reps, RngSeed seed);

struct NestedScan {
  HeatmapGrid difference;  // x = p_cp, y = p_cc
  HeatmapGrid nodf;
  std::vector<NestedCellStats> cells;  // row-major, y outer
};

NestedScan run_scan_nested(const ScanNestedConfig& cfg);
std::string format_scan_nested_csv(const ScanNestedConfig& cfg, const NestedScan& scan);

// --- inference and census ---------------------------------------------------

struct InferCensusConfig {
  std::size_t k = 3;
  GreedyOptions greedy{};
  CensusOptions census{};
  bool run_census = true;
};

// Group roles read off an inferred 3-group omega: the periphery has the
// smallest internal rate, the core is the group the periphery connects to
// most strongly, the third group is the separate community.
struct CoreRoles {
  std::size_t core = 0, periphery = 1, community = 2;
};
CoreRoles assign_core_roles(const OmegaMatrix& omega);

struct InferCensusReport {
  InferenceResult fit;
  std::optional<CoreRoles> roles;        // K = 3 only
  double q_core_periphery = 0.0;         // with roles applied, configuration null
  double q_bipartite = 0.0;
  std::optional<double> nmi_vs_planted;  // when a planted partition is known
  std::optional<Census> census;
};

InferCensusReport run_infer_census(const Graph& g, const std::optional<Partition>& planted,
                                   const InferCensusConfig& cfg);

// Q_CP and Q_Bipartite of a 3-group partition after mapping roles onto
// (core, periphery, community).
std::pair<double, double> core_periphery_vs_bipartite(const Graph& g, const Partition& p, const CoreRoles& roles);

std::string format_inference_omega(const InferenceResult& fit);
std::string format_census_csv(const Census& census, const std::vector<std::string>& provenance);

}  // namespace meso
