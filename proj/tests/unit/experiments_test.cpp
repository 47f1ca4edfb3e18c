#include <gtest/gtest.h>

#include <cmath>

#include "meso/errors.hpp"
#include "meso/experiments.hpp"
#include "meso/nestedness.hpp"

using namespace meso;

TEST(ProbabilityAxis, Grids) {
  const auto a = probability_axis(0.25, false);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_DOUBLE_EQ(a.front(), 0.25);
  EXPECT_DOUBLE_EQ(a.back(), 1.0);
  const auto b = probability_axis(0.05, true);
  ASSERT_EQ(b.size(), 21u);
  EXPECT_EQ(b.front(), 0.0);
  EXPECT_DOUBLE_EQ(b.back(), 1.0);
  EXPECT_NEAR(b[7], 0.35, 1e-12);
  EXPECT_THROW((void)probability_axis(0.0, false), InputError);
  EXPECT_THROW((void)probability_axis(1.5, false), InputError);
}

TEST(Patterns, ThreeAndFourGroupShapes) {
  const auto cp = core_periphery_community_pattern();
  const auto bip = bipartite_community_pattern();
  EXPECT_EQ(cp.size(), 3u);
  EXPECT_EQ(cp(0, 0), 1);
  EXPECT_EQ(bip(0, 0), -1);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      if (a != 0 || b != 0) EXPECT_EQ(cp(a, b), bip(a, b));
  EXPECT_EQ(nested_core_periphery_pattern().size(), 4u);
  EXPECT_EQ(nested_bipartite_pattern().size(), 4u);
}

TEST(ScanCp, CellSignsFollowAnalyticBoundary) {
  // p_p^2 / p_m = 0.3125: p_c = 0.5 sits above it for p_m = 0.8, below for p_m = 0.2 (boundary 1.25).
  const auto above = cp_scan_cell(0.5, 0.5, 0.8, 30, 10, RngSeed{1});
  const auto below = cp_scan_cell(0.5, 0.4, 0.2, 30, 10, RngSeed{1});
  EXPECT_EQ(above.samples, 10u);
  EXPECT_GT(above.mean, 0.0);
  EXPECT_LT(below.mean, 0.0);
}

TEST(ScanCp, DeterministicAcrossThreadCounts) {
  ScanCpConfig cfg;
  cfg.p_m_values = {0.5};
  cfg.step = 0.25;
  cfg.group_size = 12;
  cfg.reps = 3;
  cfg.seed = RngSeed{5};
  cfg.threads = 1;
  const auto one = format_scan_cp_csv(cfg, run_scan_cp(cfg));
  cfg.threads = 4;
  const auto four = format_scan_cp_csv(cfg, run_scan_cp(cfg));
  EXPECT_EQ(one, four);
  EXPECT_NE(one.find("# seed: 5"), std::string::npos);
  const auto scans = run_scan_cp(cfg);
  ASSERT_EQ(scans.size(), 1u);
  EXPECT_EQ(scans[0].grid.xs.size(), 4u);
  EXPECT_EQ(scans[0].grid.values.size(), 16u);
  for (const auto& [x, y] : scans[0].boundary) {
    EXPECT_NEAR(y, x * x / 0.5, 1e-12);
    EXPECT_LE(y, 1.0);
  }
}

TEST(ScanNested, SpecShape) {
  const auto spec = nested_bipartite_spec(0.3, 0.6, 10, 25);
  EXPECT_EQ(spec.sizes, (std::vector<std::size_t>{10, 25, 10, 25}));
  EXPECT_EQ(spec.probabilities(0, 2), 0.6);
  EXPECT_EQ(spec.probabilities(0, 3), 0.3);
  EXPECT_EQ(spec.probabilities(1, 2), 0.3);
  EXPECT_EQ(spec.probabilities(1, 3), 0.0);
  EXPECT_EQ(spec.probabilities(0, 1), 0.0);
}

TEST(ScanNested, DenseCoresFavourCorePeriphery) {
  const auto cell = nested_scan_cell(0.0, 1.0, 10, 25, 3, RngSeed{2});
  EXPECT_GT(cell.difference.mean, 0.0);
  // Cores fully joined and nothing else: the incidence matrix is a block of
  // ones plus empty rows, which scores zero nestedness.
  EXPECT_EQ(cell.nodf.samples, 3u);
  EXPECT_NEAR(cell.nodf.mean, 0.0, 1e-12);
}

TEST(ScanNested, EmptyCellHasNoSamples) {
  const auto cell = nested_scan_cell(0.0, 0.0, 4, 4, 2, RngSeed{3});
  EXPECT_EQ(cell.difference.samples, 0u);
  EXPECT_TRUE(std::isnan(cell.difference.mean));
}

TEST(ScanNested, CsvDeterministicAndLabelled) {
  ScanNestedConfig cfg;
  cfg.step = 0.5;
  cfg.core_size = 4;
  cfg.periphery_size = 6;
  cfg.reps = 2;
  cfg.seed = RngSeed{9};
  const auto a = format_scan_nested_csv(cfg, run_scan_nested(cfg));
  cfg.threads = 3;
  const auto b = format_scan_nested_csv(cfg, run_scan_nested(cfg));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("nodf scale: [0,1]"), std::string::npos);
  EXPECT_NE(a.find("p_cp,p_cc,mean_q_cp"), std::string::npos);
}

TEST(CoreRoles, ReadFromOmega) {
  const OmegaMatrix w({{0.1, 3.0, 0.0}, {3.0, 2.0, 0.0}, {0.0, 0.0, 4.0}});
  const auto r = assign_core_roles(w);
  EXPECT_EQ(r.periphery, 0u);
  EXPECT_EQ(r.core, 1u);
  EXPECT_EQ(r.community, 2u);
}

TEST(InferCensus, PlantedNetworkReport) {
  const auto pg = planted_core_periphery_network(RngSeed{3});
  InferCensusConfig cfg;
  cfg.greedy = {5, 100, RngSeed{4}};
  cfg.census.samples = 3;
  cfg.census.restarts = 2;
  const auto rep = run_infer_census(pg.graph, pg.partition, cfg);
  ASSERT_TRUE(rep.roles.has_value());
  ASSERT_TRUE(rep.nmi_vs_planted.has_value());
  ASSERT_TRUE(rep.census.has_value());
  EXPECT_EQ(rep.census->samples, 3u);
  const auto csv = format_census_csv(*rep.census, {"test"});
  EXPECT_NE(csv.find("label,count,samples,proportion"), std::string::npos);
  EXPECT_EQ(format_inference_omega(rep.fit).rfind("# log-likelihood", 0), 0u);
}

TEST(Version, NonEmpty) { EXPECT_FALSE(library_version().empty()); }
