#include "meso/experiments.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "meso/errors.hpp"
#include "meso/nestedness.hpp"
#include "meso/null_models.hpp"
#include "meso/parallel.hpp"

namespace meso {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Welford accumulator; NaN inputs are ignored.
class Running {
 public:
  void add(double x) {
    if (std::isnan(x)) return;
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  CellStats stats() const {
    if (n_ == 0) return {kNan, kNan, 0};
    const double var = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    return {mean_, std::sqrt(var), n_};
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0, m2_ = 0.0;
};

std::string fmt_num(double v) { return std::isnan(v) ? std::string("nan") : fmt::format("{:.10g}", v); }

std::vector<std::string> provenance(std::string_view what, std::string config, RngSeed seed) {
  return {fmt::format("meso {} {}", library_version(), what), "config: " + std::move(config),
          fmt::format("seed: {}", seed.value)};
}

std::string comment_block(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "# " + l + "\n";
  return out;
}

}  // namespace

std::string_view library_version() {
#ifdef MESO_VERSION
  return MESO_VERSION;
#else
  return "unknown";
#endif
}

BlockMatrix core_periphery_community_pattern() { return BlockMatrix({{1, 1, -1}, {1, -1, -1}, {-1, -1, 1}}); }

BlockMatrix bipartite_community_pattern() { return BlockMatrix({{-1, 1, -1}, {1, -1, -1}, {-1, -1, 1}}); }

BlockMatrix nested_core_periphery_pattern() {
  return BlockMatrix({{-1, -1, 1, 1}, {-1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, -1}});
}

BlockMatrix nested_bipartite_pattern() {
  return BlockMatrix({{-1, -1, -1, 1}, {-1, -1, 1, -1}, {-1, 1, -1, -1}, {1, -1, -1, -1}});
}

std::vector<double> probability_axis(double step, bool include_zero) {
  if (!(step > 0.0 && step <= 1.0)) throw InputError(fmt::format("grid step must lie in (0, 1], got {}", step));
  // Integer multiples avoid accumulated rounding; the tolerance admits 1.0
  // when step divides it up to floating point error.
  const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  std::vector<double> axis;
  if (include_zero) axis.push_back(0.0);
  for (std::size_t i = 1; i <= count; ++i) axis.push_back(std::min(1.0, static_cast<double>(i) * step));
  return axis;
}

// --- core-periphery scan ----------------------------------------------------

CellStats cp_scan_cell(double p_p, double p_c, double p_m, std::size_t n, std::size_t reps, RngSeed seed) {
  SbmSpec spec;
  spec.sizes = {n, n, n};
  spec.probabilities = SquareMatrix<double>({{p_c, p_p, 0.0}, {p_p, 0.0, 0.0}, {0.0, 0.0, p_m}});
  const auto cp = core_periphery_community_pattern();
  const auto bip = bipartite_community_pattern();
  Running acc;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto planted = sbm_generate(spec, derive_seed(seed, r));
    if (planted.graph.edge_count() == 0) continue;
    const auto q = q_matrix(block_summary(planted.graph, planted.partition), NullModel::configuration());
    acc.add(block_modularity(q, cp) - block_modularity(q, bip));
  }
  return acc.stats();
}

std::vector<CpScan> run_scan_cp(const ScanCpConfig& cfg) {
  if (cfg.p_m_values.empty()) throw InputError("scan needs at least one p_m value");
  for (double p_m : cfg.p_m_values)
    if (!(p_m > 0.0 && p_m <= 1.0)) throw InputError(fmt::format("p_m must lie in (0, 1], got {}", p_m));
  if (cfg.group_size == 0 || cfg.reps == 0) throw InputError("group size and reps must be positive");

  const auto axis = probability_axis(cfg.step, false);
  const std::size_t na = axis.size(), cells_per_scan = na * na;
  std::vector<CellStats> cells(cfg.p_m_values.size() * cells_per_scan);

  parallel_for(cells.size(), cfg.threads, [&](std::size_t flat) {
    const std::size_t i_pm = flat / cells_per_scan;
    const std::size_t i_pc = (flat % cells_per_scan) / na;
    const std::size_t i_pp = flat % na;
    cells[flat] = cp_scan_cell(axis[i_pp], axis[i_pc], cfg.p_m_values[i_pm], cfg.group_size, cfg.reps,
                               derive_seed(cfg.seed, flat));
  });

  std::vector<CpScan> scans;
  for (std::size_t i_pm = 0; i_pm < cfg.p_m_values.size(); ++i_pm) {
    CpScan s;
    s.p_m = cfg.p_m_values[i_pm];
    s.grid.x_label = "p_p";
    s.grid.y_label = "p_c";
    s.grid.xs = axis;
    s.grid.ys = axis;
    for (std::size_t i = 0; i < cells_per_scan; ++i) {
      const auto& c = cells[i_pm * cells_per_scan + i];
      s.grid.values.push_back(c.mean);
      s.stddev.push_back(c.stddev);
    }
    for (double p_p : axis) {
      const double p_c = p_p * p_p / s.p_m;
      if (p_c <= 1.0) s.boundary.emplace_back(p_p, p_c);
    }
    scans.push_back(std::move(s));
  }
  return scans;
}

std::string format_scan_cp_csv(const ScanCpConfig& cfg, const std::vector<CpScan>& scans) {
  std::string pms;
  for (double v : cfg.p_m_values) pms += (pms.empty() ? "" : " ") + fmt_num(v);
  std::string out = comment_block(provenance(
      "scan-cp",
      fmt::format("p_m=[{}] step={} group_size={} reps={}", pms, fmt_num(cfg.step), cfg.group_size, cfg.reps),
      cfg.seed));
  out += "p_m,p_p,p_c,mean_difference,stddev,reps,analytic_boundary_p_c\n";
  for (const auto& s : scans) {
    for (std::size_t iy = 0; iy < s.grid.ys.size(); ++iy) {
      for (std::size_t ix = 0; ix < s.grid.xs.size(); ++ix) {
        const double p_p = s.grid.xs[ix];
        out += fmt::format("{},{},{},{},{},{},{}\n", fmt_num(s.p_m), fmt_num(p_p), fmt_num(s.grid.ys[iy]),
                           fmt_num(s.grid.at(ix, iy)), fmt_num(s.stddev[iy * s.grid.xs.size() + ix]), cfg.reps,
                           fmt_num(p_p * p_p / s.p_m));
      }
    }
  }
  return out;
}

// --- nested bipartite scan --------------------------------------------------

SbmSpec nested_bipartite_spec(double p_cp, double p_cc, std::size_t core, std::size_t periphery) {
  SbmSpec spec;
  spec.sizes = {core, periphery, core, periphery};
  spec.probabilities = SquareMatrix<double>(
      {{0.0, 0.0, p_cc, p_cp}, {0.0, 0.0, p_cp, 0.0}, {p_cc, p_cp, 0.0, 0.0}, {p_cp, 0.0, 0.0, 0.0}});
  return spec;
}

NestedCellStats nested_scan_cell(double p_cp, double p_cc, std::size_t core, std::size_t periphery,
                                 std::size_t reps, RngSeed seed) {
  const auto spec = nested_bipartite_spec(p_cp, p_cc, core, periphery);
  const auto cp = nested_core_periphery_pattern();
  const auto bip = nested_bipartite_pattern();
  std::vector<NodeId> left(core + periphery);
  std::iota(left.begin(), left.end(), NodeId{0});

  Running q_cp, q_bip, diff, nest;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto planted = sbm_generate(spec, derive_seed(seed, r));
    if (planted.graph.edge_count() == 0) continue;
    const auto q = q_matrix(block_summary(planted.graph, planted.partition), NullModel::configuration());
    const double a = block_modularity(q, cp), b = block_modularity(q, bip);
    q_cp.add(a);
    q_bip.add(b);
    diff.add(a - b);
    try {
      nest.add(nodf(from_bipartite(planted.graph, left)));
    } catch (const DegenerateError&) {
    }
  }
  return {q_cp.stats(), q_bip.stats(), diff.stats(), nest.stats()};
}

NestedScan run_scan_nested(const ScanNestedConfig& cfg) {
  if (cfg.core_size == 0 || cfg.periphery_size == 0 || cfg.reps == 0)
    throw InputError("group sizes and reps must be positive");
  const auto axis = probability_axis(cfg.step, true);
  const std::size_t na = axis.size();

  NestedScan scan;
  scan.cells.resize(na * na);
  parallel_for(scan.cells.size(), cfg.threads, [&](std::size_t flat) {
    const std::size_t iy = flat / na, ix = flat % na;
    scan.cells[flat] =
        nested_scan_cell(axis[ix], axis[iy], cfg.core_size, cfg.periphery_size, cfg.reps, derive_seed(cfg.seed, flat));
  });

  for (HeatmapGrid* g : {&scan.difference, &scan.nodf}) {
    g->x_label = "p_cp";
    g->y_label = "p_cc";
    g->xs = axis;
    g->ys = axis;
  }
  for (const auto& c : scan.cells) {
    scan.difference.values.push_back(c.difference.mean);
    scan.nodf.values.push_back(c.nodf.mean);
  }
  return scan;
}

std::string format_scan_nested_csv(const ScanNestedConfig& cfg, const NestedScan& scan) {
  std::string out = comment_block(provenance(
      "scan-nested",
      fmt::format("step={} core_size={} periphery_size={} reps={}", fmt_num(cfg.step), cfg.core_size,
                  cfg.periphery_size, cfg.reps),
      cfg.seed));
  out += "# nodf scale: [0,1] (paired overlap, decreasing fill)\n";
  out += "p_cp,p_cc,mean_q_cp,mean_q_bipartite,mean_difference,stddev_difference,mean_nodf,stddev_nodf,reps\n";
  const auto& xs = scan.difference.xs;
  const auto& ys = scan.difference.ys;
  for (std::size_t iy = 0; iy < ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const auto& c = scan.cells[iy * xs.size() + ix];
      out += fmt::format("{},{},{},{},{},{},{},{},{}\n", fmt_num(xs[ix]), fmt_num(ys[iy]),
                         fmt_num(c.q_core_periphery.mean), fmt_num(c.q_bipartite.mean), fmt_num(c.difference.mean),
                         fmt_num(c.difference.stddev), fmt_num(c.nodf.mean), fmt_num(c.nodf.stddev),
                         c.difference.samples);
    }
  }
  return out;
}

// --- inference and census ---------------------------------------------------

CoreRoles assign_core_roles(const OmegaMatrix& omega) {
  if (omega.size() != 3) throw InputError("core roles need exactly three groups");
  CoreRoles roles;
  roles.periphery = 0;
  for (std::size_t a = 1; a < 3; ++a)
    if (omega(a, a) < omega(roles.periphery, roles.periphery)) roles.periphery = a;
  bool have_core = false;
  for (std::size_t x = 0; x < 3; ++x) {
    if (x == roles.periphery) continue;
    if (!have_core || omega(roles.periphery, x) > omega(roles.periphery, roles.core)) {
      roles.core = x;
      have_core = true;
    }
  }
  roles.community = 3 - roles.core - roles.periphery;
  return roles;
}

std::pair<double, double> core_periphery_vs_bipartite(const Graph& g, const Partition& p, const CoreRoles& roles) {
  if (p.group_count() != 3) throw InputError("core-periphery comparison needs a 3-group partition");
  std::array<GroupId, 3> role_of{};
  role_of[roles.core] = 0;
  role_of[roles.periphery] = 1;
  role_of[roles.community] = 2;
  std::vector<GroupId> mapped(p.labels().begin(), p.labels().end());
  for (auto& l : mapped) l = role_of[l];
  const auto q = q_matrix(block_summary(g, Partition(std::move(mapped), 3)), NullModel::configuration());
  return {block_modularity(q, core_periphery_community_pattern()), block_modularity(q, bipartite_community_pattern())};
}

InferCensusReport run_infer_census(const Graph& g, const std::optional<Partition>& planted,
                                   const InferCensusConfig& cfg) {
  InferCensusReport report;
  report.fit = greedy_optimize(g, cfg.k, cfg.greedy);
  if (cfg.k == 3) {
    report.roles = assign_core_roles(report.fit.omega);
    std::tie(report.q_core_periphery, report.q_bipartite) = core_periphery_vs_bipartite(g, report.fit.partition, *report.roles);
  }
  if (planted) {
    if (planted->node_count() != g.node_count()) throw InputError("planted partition does not match the graph");
    report.nmi_vs_planted = normalized_mutual_information(report.fit.partition, *planted);
  }
  if (cfg.run_census) report.census = ensemble_census(g, cfg.k, cfg.census);
  return report;
}

std::string format_inference_omega(const InferenceResult& fit) {
  std::string out = fmt::format("# log-likelihood {}\n# restart {} sweeps {}\n", fmt_num(fit.score), fit.restart,
                                fit.sweeps);
  for (std::size_t a = 0; a < fit.omega.size(); ++a) {
    for (std::size_t b = 0; b < fit.omega.size(); ++b) out += (b ? " " : "") + fmt_num(fit.omega(a, b));
    out += '\n';
  }
  return out;
}

std::string format_census_csv(const Census& census, const std::vector<std::string>& provenance_lines) {
  std::string out = comment_block(provenance_lines);
  out += "label,count,samples,proportion\n";
  for (auto label : kStructureLabels)
    out += fmt::format("{},{},{},{}\n", to_string(label), census.counts[static_cast<std::size_t>(label)],
                       census.samples, fmt_num(census.proportion(label)));
  return out;
}

}  // namespace meso
