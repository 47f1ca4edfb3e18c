// meso: command-line front end for the meso library.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "meso/block_modularity.hpp"
#include "meso/constraints.hpp"
#include "meso/errors.hpp"
#include "meso/experiments.hpp"
#include "meso/generators.hpp"
#include "meso/graph.hpp"
#include "meso/heatmap.hpp"
#include "meso/inference.hpp"
#include "meso/null_models.hpp"
#include "meso/parallel.hpp"
#include "meso/patterns.hpp"

namespace fs = std::filesystem;
using namespace meso;

namespace {

constexpr int kInputErrorExit = 2;

struct Globals {
  std::uint64_t seed = 1;
  bool directed = false;
  std::string null = "config";
  double gamma = 1.0;
  std::string gamma_matrix;
  std::string out;
  std::size_t threads = 1;
};

std::string num(double v) { return std::isnan(v) ? std::string("nan") : fmt::format("{:.10g}", v); }

void emit(const Globals& g, std::string_view text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
  } else {
    write_text_file(g.out, text);
  }
}

SquareMatrix<double> parse_real_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(fmt::format("'{}' is not a number", tok), line_no);
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const std::size_t k = rows.size();
  if (k == 0) throw ParseError("gamma matrix is empty", line_no);
  SquareMatrix<double> m(k);
  for (std::size_t a = 0; a < k; ++a) {
    if (rows[a].size() != k) throw InputError(fmt::format("gamma matrix row {} has {} entries, expected {}", a, rows[a].size(), k));
    for (std::size_t b = 0; b < k; ++b) m(a, b) = rows[a][b];
  }
  return m;
}

NullModel make_null(const Globals& g) {
  if (g.null == "config") return NullModel::configuration();
  if (g.null == "er") return NullModel::erdos_renyi();
  if (g.null == "scaled") return NullModel::scaled(g.gamma);
  if (g.null == "block-scaled") {
    if (g.gamma_matrix.empty()) throw InputError("--null block-scaled needs --gamma-matrix");
    return NullModel::block_scaled(parse_real_matrix(read_text_file(g.gamma_matrix)));
  }
  throw InputError(fmt::format("unknown null model '{}'", g.null));
}

std::string header(const Globals& g, std::string_view command, const std::string& config) {
  return fmt::format("# meso {} {}\n# config: {} directed={} seed={}\n", library_version(), command, config,
                     g.directed ? 1 : 0, g.seed);
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string input, partition, block;
};

void run_analyze(const Globals& g, const AnalyzeArgs& a) {
  const Graph graph = read_edge_list_file(a.input, g.directed);
  const Partition part = read_partition_file(a.partition, graph.node_count());
  const auto bs = block_summary(graph, part);
  const auto null = make_null(g);
  const auto q = q_matrix(bs, null);
  const auto expected = expected_blocks(null, bs);

  std::string out = header(g, "analyze", fmt::format("input={} partition={} null={} gamma={}{}", a.input, a.partition,
                                                      to_string(null.kind), num(g.gamma),
                                                      g.gamma_matrix.empty() ? "" : " gamma_matrix=" + g.gamma_matrix));
  fmt::format_to(std::back_inserter(out), "# nodes={} edges={} groups={}\n", graph.node_count(), graph.edge_count(),
                 part.group_count());
  if (!a.block.empty()) {
    const auto b = parse_block_matrix(read_text_file(a.block), g.directed);
    out += "metric,value\n";
    out += "block_modularity," + num(block_modularity(q, b)) + "\n";
    if (!g.directed) out += "newman_modularity," + num(newman_modularity(bs)) + "\n";
    emit(g, out);
    return;
  }
  out += "a,b,observed,expected,q,normalized_q\n";
  for (std::size_t x = 0; x < q.size(); ++x)
    for (std::size_t y = 0; y < q.size(); ++y)
      out += fmt::format("{},{},{},{},{},{}\n", x, y, bs.counts(x, y), num(expected(x, y)), num(q.values(x, y)),
                         num(q.values(x, y) / q.normalizer()));
  emit(g, out);
}

// --- patterns ---------------------------------------------------------------

void run_patterns(const Globals& g, std::size_t k) {
  const auto patterns = enumerate_patterns(k, g.directed);
  std::string out = header(g, "patterns", fmt::format("k={}", k));
  out += "index,bits,admissible,label,oriented_group,canonical_bits\n";
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    std::string label = "n/a";
    int oriented = -1;
    if (k == 2) {
      const auto c = classify_2x2(p, g.directed);
      label = std::string(to_string(c.label));
      oriented = c.oriented_group;
    }
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", i, pattern_bits(p),
                   admissible_under_configuration(p) ? 1 : 0, label, oriented, pattern_bits(canonical_form(p)));
  }
  emit(g, out);
}

// --- sample -----------------------------------------------------------------

struct SampleArgs {
  std::string input, out_dir;
  std::size_t samples = 10;
  std::size_t swaps = kDefaultSwapsPerEdge;
};

void run_sample(const Globals& g, const SampleArgs& a) {
  if (a.out_dir.empty()) throw InputError("sample needs --out-dir");
  const Graph graph = read_edge_list_file(a.input, g.directed);
  fs::create_directories(a.out_dir);
  const int width = std::max<int>(4, static_cast<int>(std::to_string(a.samples).size()));
  parallel_for(a.samples, resolve_thread_count(g.threads), [&](std::size_t i) {
    const auto sample = configuration_sample(graph, derive_seed(RngSeed{g.seed}, i), a.swaps);
    write_edge_list_file(sample, fs::path(a.out_dir) / fmt::format("sample_{:0{}}.txt", i, width));
  });
  std::string manifest = header(g, "sample", fmt::format("input={} samples={} swaps_per_edge={}", a.input, a.samples, a.swaps));
  manifest += "index,file\n";
  for (std::size_t i = 0; i < a.samples; ++i) manifest += fmt::format("{},sample_{:0{}}.txt\n", i, i, width);
  write_text_file(fs::path(a.out_dir) / "manifest.csv", manifest);
}

// --- infer ------------------------------------------------------------------

struct InferArgs {
  std::string input, planted;
  std::size_t k = 3, restarts = 20, max_sweeps = 100;
  bool alternating = false;
};

void run_infer(const Globals& g, const InferArgs& a) {
  if (g.directed) throw UnsupportedError("dc-SBM inference is implemented for undirected graphs only");
  const Graph graph = read_edge_list_file(a.input, false);
  std::optional<Partition> planted;
  if (!a.planted.empty()) planted = read_partition_file(a.planted, graph.node_count());

  GreedyOptions opts{a.restarts, a.max_sweeps, RngSeed{g.seed}};
  InferCensusConfig cfg;
  cfg.k = a.k;
  cfg.greedy = opts;
  cfg.run_census = false;
  InferCensusReport report;
  if (a.alternating) {
    report.fit = alternating_optimize(graph, a.k, opts);
    if (planted) report.nmi_vs_planted = normalized_mutual_information(report.fit.partition, *planted);
  } else {
    report = run_infer_census(graph, planted, cfg);
  }

  std::string summary = header(g, "infer", fmt::format("input={} k={} restarts={} max_sweeps={} mode={}", a.input, a.k,
                                                       a.restarts, a.max_sweeps, a.alternating ? "alternating" : "greedy"));
  summary += "metric,value\n";
  summary += "log_likelihood," + num(report.fit.score) + "\n";
  summary += fmt::format("best_restart,{}\nsweeps,{}\n", report.fit.restart, report.fit.sweeps);
  if (report.roles) {
    summary += fmt::format("core_group,{}\nperiphery_group,{}\ncommunity_group,{}\n", report.roles->core,
                           report.roles->periphery, report.roles->community);
    summary += "q_core_periphery," + num(report.q_core_periphery) + "\n";
    summary += "q_bipartite," + num(report.q_bipartite) + "\n";
  }
  if (report.nmi_vs_planted) summary += "nmi_vs_planted," + num(*report.nmi_vs_planted) + "\n";

  if (g.out.empty() || g.out == "-") {
    std::cout << summary << "# partition\n" << format_partition(report.fit.partition) << "# omega\n"
              << format_inference_omega(report.fit);
  } else {
    write_text_file(g.out, format_partition(report.fit.partition));
    write_text_file(g.out + ".omega", format_inference_omega(report.fit));
    std::cout << summary;
  }
}

// --- census -----------------------------------------------------------------

struct CensusArgs {
  std::string input;
  std::size_t k = 3, samples = 1000, swaps = kDefaultSwapsPerEdge, restarts = 20, max_sweeps = 100;
  double f = kDefaultStructureThreshold;
};

void run_census(const Globals& g, const CensusArgs& a) {
  if (g.directed) throw UnsupportedError("the structure census is implemented for undirected graphs only");
  const Graph graph = read_edge_list_file(a.input, false);
  CensusOptions opts;
  opts.samples = a.samples;
  opts.threshold = a.f;
  opts.swaps_per_edge = a.swaps;
  opts.restarts = a.restarts;
  opts.max_sweeps = a.max_sweeps;
  opts.threads = resolve_thread_count(g.threads);
  opts.seed = RngSeed{g.seed};
  const auto census = ensemble_census(graph, a.k, opts);
  emit(g, format_census_csv(census, {fmt::format("meso {} census", library_version()),
                                     fmt::format("config: input={} k={} samples={} f={} swaps_per_edge={} restarts={} "
                                                 "max_sweeps={}",
                                                 a.input, a.k, a.samples, num(a.f), a.swaps, a.restarts, a.max_sweeps),
                                     fmt::format("seed: {}", g.seed)}));
}

// --- scans ------------------------------------------------------------------

void write_svg(const fs::path& dir, const std::string& name, const HeatmapGrid& grid, Palette palette,
               const std::vector<std::pair<double, double>>& boundary, const std::string& title,
               const std::vector<std::string>& comments) {
  fs::create_directories(dir);
  write_text_file(dir / (name + ".svg"), render_heatmap_svg(grid, palette, boundary, title));
  write_text_file(dir / (name + ".grid.csv"), format_grid_csv(grid, comments));
  if (!boundary.empty()) write_text_file(dir / (name + ".boundary.csv"), format_boundary_csv(boundary));
}

struct ScanCpArgs {
  ScanCpConfig cfg;
  std::string svg_dir;
};

void run_scan_cp_cmd(const Globals& g, ScanCpArgs a) {
  a.cfg.seed = RngSeed{g.seed};
  a.cfg.threads = resolve_thread_count(g.threads);
  const auto scans = run_scan_cp(a.cfg);
  const auto csv = format_scan_cp_csv(a.cfg, scans);
  emit(g, csv);
  if (a.svg_dir.empty()) return;
  for (const auto& s : scans) {
    const auto tag = fmt::format("scan_cp_pm{}", num(s.p_m));
    write_svg(a.svg_dir, tag, s.grid, Palette::Diverging, s.boundary,
              fmt::format("Q_CP - Q_Bipartite, p_m = {}", num(s.p_m)),
              {fmt::format("meso {} scan-cp p_m={} seed={}", library_version(), num(s.p_m), g.seed)});
  }
}

struct ScanNestedArgs {
  ScanNestedConfig cfg;
  std::string svg_dir;
};

void run_scan_nested_cmd(const Globals& g, ScanNestedArgs a) {
  a.cfg.seed = RngSeed{g.seed};
  a.cfg.threads = resolve_thread_count(g.threads);
  const auto scan = run_scan_nested(a.cfg);
  emit(g, format_scan_nested_csv(a.cfg, scan));
  if (a.svg_dir.empty()) return;
  const std::vector<std::string> comments{fmt::format("meso {} scan-nested seed={}", library_version(), g.seed)};
  write_svg(a.svg_dir, "scan_nested_difference", scan.difference, Palette::Diverging, {}, "Q_CP - Q_Bipartite", comments);
  write_svg(a.svg_dir, "scan_nested_nodf", scan.nodf, Palette::Sequential, {}, "NODF", comments);
}

// --- heatmap / relabel ------------------------------------------------------

struct HeatmapArgs {
  std::string grid, boundary, palette = "diverging", title;
};

void run_heatmap(const Globals& g, const HeatmapArgs& a) {
  const auto grid = parse_grid_csv(read_text_file(a.grid));
  std::vector<std::pair<double, double>> boundary;
  if (!a.boundary.empty()) boundary = parse_boundary_csv(read_text_file(a.boundary));
  emit(g, render_heatmap_svg(grid, a.palette == "sequential" ? Palette::Sequential : Palette::Diverging, boundary,
                             a.title));
}

struct RelabelArgs {
  std::string input, map;
};

void run_relabel(const Globals& g, const RelabelArgs& a) {
  const auto r = relabel_edge_list(read_text_file(a.input));
  emit(g, r.edge_list);
  if (!a.map.empty()) write_text_file(a.map, format_id_map(r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block modularity, structure constraints and dc-SBM inference for meso-scale network structure"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
  app.add_flag("--directed", g.directed, "Treat edge lists as directed");
  app.add_option("--null", g.null, "Null model")
      ->check(CLI::IsMember({"config", "er", "scaled", "block-scaled"}))
      ->capture_default_str();
  app.add_option("--gamma", g.gamma, "Scale for --null scaled")->capture_default_str();
  app.add_option("--gamma-matrix", g.gamma_matrix, "K x K scale matrix file for --null block-scaled");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores (MESO_THREADS overrides)")
      ->capture_default_str();

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  AnalyzeArgs analyze;
  auto* c_analyze = sub("analyze", "Block counts and Q matrix of a partitioned graph");
  c_analyze->add_option("--input", analyze.input, "Edge list")->required();
  c_analyze->add_option("--partition", analyze.partition, "Partition file (node group per line)")->required();
  c_analyze->add_option("--block", analyze.block, "Block pattern file; reports Q(B) instead of the Q matrix");

  std::size_t pattern_k = 2;
  auto* c_patterns = sub("patterns", "Enumerate +-1 block patterns and their admissibility");
  c_patterns->add_option("--k", pattern_k, "Number of groups (1-4)")->capture_default_str();

  SampleArgs sample;
  auto* c_sample = sub("sample", "Degree-preserving random rewirings of a graph");
  c_sample->add_option("--input", sample.input, "Edge list")->required();
  c_sample->add_option("--samples", sample.samples, "Number of samples")->capture_default_str();
  c_sample->add_option("--swaps", sample.swaps, "Swap attempts per edge")->capture_default_str();
  c_sample->add_option("--out-dir", sample.out_dir, "Directory for numbered edge lists")->required();

  InferArgs infer;
  auto* c_infer = sub("infer", "Fit a K-group degree-corrected SBM by greedy label swaps");
  c_infer->add_option("--input", infer.input, "Edge list")->required();
  c_infer->add_option("--planted", infer.planted, "Known partition to score the fit against");
  c_infer->add_option("--k", infer.k, "Number of groups")->capture_default_str();
  c_infer->add_option("--restarts", infer.restarts, "Random restarts")->capture_default_str();
  c_infer->add_option("--max-sweeps", infer.max_sweeps, "Sweeps per restart")->capture_default_str();
  c_infer->add_flag("--alternating", infer.alternating, "Experimental fixed-omega alternating scheme");

  CensusArgs census;
  auto* c_census = sub("census", "Structure census over degree-preserving samples");
  c_census->add_option("--input", census.input, "Edge list")->required();
  c_census->add_option("--k", census.k, "Number of groups")->capture_default_str();
  c_census->add_option("--samples", census.samples, "Number of samples")->capture_default_str();
  c_census->add_option("--f", census.f, "Structure threshold in (0, 1]")->capture_default_str();
  c_census->add_option("--swaps", census.swaps, "Swap attempts per edge")->capture_default_str();
  c_census->add_option("--restarts", census.restarts, "Restarts per sample")->capture_default_str();
  c_census->add_option("--max-sweeps", census.max_sweeps, "Sweeps per restart")->capture_default_str();

  ScanCpArgs scan_cp;
  auto* c_scan_cp = sub("scan-cp", "Q_CP - Q_Bipartite over (p_p, p_c) for a core-periphery SBM");
  c_scan_cp->add_option("--p-m", scan_cp.cfg.p_m_values, "Community densities, one heatmap each")->capture_default_str();
  c_scan_cp->add_option("--step", scan_cp.cfg.step, "Grid step")->capture_default_str();
  c_scan_cp->add_option("--group-size", scan_cp.cfg.group_size, "Nodes per group")->capture_default_str();
  c_scan_cp->add_option("--reps", scan_cp.cfg.reps, "Graphs per cell")->capture_default_str();
  c_scan_cp->add_option("--svg-dir", scan_cp.svg_dir, "Also write SVG heatmaps and grid CSVs here");

  ScanNestedArgs scan_nested;
  auto* c_scan_nested = sub("scan-nested", "Q_CP - Q_Bipartite and NODF over (p_cp, p_cc) for a bipartite SBM");
  c_scan_nested->add_option("--step", scan_nested.cfg.step, "Grid step")->capture_default_str();
  c_scan_nested->add_option("--core", scan_nested.cfg.core_size, "Core nodes per side")->capture_default_str();
  c_scan_nested->add_option("--periphery", scan_nested.cfg.periphery_size, "Periphery nodes per side")
      ->capture_default_str();
  c_scan_nested->add_option("--reps", scan_nested.cfg.reps, "Graphs per cell")->capture_default_str();
  c_scan_nested->add_option("--svg-dir", scan_nested.svg_dir, "Also write SVG heatmaps and grid CSVs here");

  HeatmapArgs heatmap;
  auto* c_heatmap = sub("heatmap", "Render a grid CSV as an SVG heatmap");
  c_heatmap->add_option("--grid", heatmap.grid, "Grid CSV")->required();
  c_heatmap->add_option("--boundary", heatmap.boundary, "Boundary CSV (x,y) drawn as a dashed line");
  c_heatmap->add_option("--palette", heatmap.palette, "Colour scheme")
      ->check(CLI::IsMember({"diverging", "sequential"}))
      ->capture_default_str();
  c_heatmap->add_option("--title", heatmap.title, "Title");

  RelabelArgs relabel;
  auto* c_relabel = sub("relabel", "Map arbitrary node labels to 0..N-1");
  c_relabel->add_option("--input", relabel.input, "Edge list with arbitrary tokens")->required();
  c_relabel->add_option("--map", relabel.map, "Where to write the original-label table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputErrorExit;
  }

  try {
    if (*c_analyze) run_analyze(g, analyze);
    else if (*c_patterns) run_patterns(g, pattern_k);
    else if (*c_sample) run_sample(g, sample);
    else if (*c_infer) run_infer(g, infer);
    else if (*c_census) run_census(g, census);
    else if (*c_scan_cp) run_scan_cp_cmd(g, scan_cp);
    else if (*c_scan_nested) run_scan_nested_cmd(g, scan_nested);
    else if (*c_heatmap) run_heatmap(g, heatmap);
    else if (*c_relabel) run_relabel(g, relabel);
  } catch (const Error& e) {
    std::cerr << "meso: " << e.what() << '\n';
    return kInputErrorExit;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "meso: " << e.what() << '\n';
    return kInputErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "meso: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
