#include "meso/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "meso/errors.hpp"
#include "meso/generators.hpp"
#include "meso/parallel.hpp"

namespace meso {

namespace {

void require_undirected(const BlockSummary& bs, std::string_view what) {
  if (bs.directed) throw UnsupportedError(fmt::format("{} is implemented for undirected graphs", what));
  if (bs.edge_count <= 0) throw DegenerateError(fmt::format("{} needs at least one edge", what));
}

void require_shape(const BlockSummary& bs, const OmegaMatrix& omega) {
  if (omega.size() != bs.group_count())
    throw InputError(fmt::format("omega is {0}x{0} but the partition has {1} groups", omega.size(), bs.group_count()));
}

// S log(2E S / (T_a T_b)): one block's contribution to twice the profile
// log-likelihood (the -T_a T_b omega / 2E part sums to -2E separately).
double profile_term(double s, double t_a, double t_b, double two_e) {
  if (s <= 0.0) return 0.0;
  return s * std::log(two_e * s / (t_a * t_b));
}

}  // namespace

LogLikelihood dcsbm_log_likelihood(const BlockSummary& bs, const OmegaMatrix& omega) {
  require_undirected(bs, "the dc-SBM likelihood");
  require_shape(bs, omega);
  const double two_e = static_cast<double>(bs.total_mass());
  double sum = 0.0;
  for (std::size_t a = 0; a < bs.group_count(); ++a) {
    for (std::size_t b = 0; b < bs.group_count(); ++b) {
      const double w = omega(a, b);
      if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("omega entries must be finite and non-negative");
      const double s = static_cast<double>(bs.counts(a, b));
      if (s > 0.0) {
        if (w == 0.0) return {-std::numeric_limits<double>::infinity(), true};
        sum += s * std::log(w);
      }
      sum -= static_cast<double>(bs.t_out[a]) * static_cast<double>(bs.t_out[b]) * w / two_e;
    }
  }
  return {0.5 * sum, false};
}

OmegaMatrix estimate_omega(const BlockSummary& bs) {
  require_undirected(bs, "omega estimation");
  const std::size_t k = bs.group_count();
  const double two_e = static_cast<double>(bs.total_mass());
  OmegaMatrix omega(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const double tt = static_cast<double>(bs.t_out[a]) * static_cast<double>(bs.t_out[b]);
      if (tt > 0.0) omega(a, b) = two_e * static_cast<double>(bs.counts(a, b)) / tt;
    }
  }
  return omega;
}

std::vector<std::size_t> degenerate_groups(const BlockSummary& bs) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < bs.group_count(); ++a)
    if (bs.t_out[a] == 0) out.push_back(a);
  return out;
}

ModularityBridge modularity_bridge(const OmegaMatrix& omega) {
  const std::size_t k = omega.size();
  ModularityBridge bridge{SquareMatrix<double>(k, 0.0), SquareMatrix<double>(k, 0.0), 0};
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const double w = omega(a, b);
      if (!(w > 0.0) || !std::isfinite(w))
        throw InputError(fmt::format("omega({}, {}) = {} has no modularity bridge; use the likelihood", a, b, w));
      const double log_w = std::log(w);
      bridge.weights(a, b) = log_w;
      if (log_w == 0.0) {
        bridge.gamma(a, b) = std::numeric_limits<double>::infinity();
        ++bridge.singular_entries;
      } else {
        bridge.gamma(a, b) = w / log_w;
      }
    }
  }
  return bridge;
}

double bridged_block_modularity(const BlockSummary& bs, const OmegaMatrix& omega) {
  require_undirected(bs, "the bridged block modularity");
  require_shape(bs, omega);
  const double two_e = static_cast<double>(bs.total_mass());
  double sum = 0.0;
  for (std::size_t a = 0; a < bs.group_count(); ++a) {
    for (std::size_t b = 0; b < bs.group_count(); ++b) {
      const double w = omega(a, b);
      if (!(w > 0.0)) throw InputError("bridged block modularity needs omega > 0");
      const double tt = static_cast<double>(bs.t_out[a]) * static_cast<double>(bs.t_out[b]);
      sum += std::log(w) * static_cast<double>(bs.counts(a, b)) - w * tt / two_e;
    }
  }
  return sum / two_e;
}

double planted_partition_gamma(double omega_in, double omega_out) {
  if (!(omega_in > 0.0) || !(omega_out > 0.0)) throw InputError("planted-partition rates must be positive");
  if (omega_in == omega_out) throw InputError("planted-partition gamma is undefined for omega_in == omega_out");
  return (omega_in - omega_out) / (std::log(omega_in) - std::log(omega_out));
}

OmegaMatrix planted_partition_omega(const SquareMatrix<int>& pattern, double omega_in, double omega_out) {
  OmegaMatrix omega(pattern.size(), 0.0);
  for (std::size_t a = 0; a < pattern.size(); ++a)
    for (std::size_t b = 0; b < pattern.size(); ++b) {
      if (pattern(a, b) != 0 && pattern(a, b) != 1) throw InputError("planted-partition pattern entries must be 0 or 1");
      omega(a, b) = pattern(a, b) == 1 ? omega_in : omega_out;
    }
  return omega;
}

// --- greedy optimiser -------------------------------------------------------

namespace {

// Mutable state of one restart. S and T are kept as doubles (exact integers)
// so score terms can be recomputed without conversions.
class LabelState {
 public:
  LabelState(const Graph& g, std::size_t k, std::vector<GroupId> labels)
      : g_(g), k_(k), labels_(std::move(labels)), s_(k, 0.0), t_(k, 0.0), neighbour_counts_(k, 0.0) {
    two_e_ = 2.0 * static_cast<double>(g.edge_count());
    for (const auto& e : g.edges()) {
      s_(labels_[e.source], labels_[e.target]) += 1.0;
      s_(labels_[e.target], labels_[e.source]) += 1.0;
    }
    for (NodeId v = 0; v < g.node_count(); ++v) t_[labels_[v]] += static_cast<double>(g.degree(v));
    resync();
  }

  std::size_t group_count() const { return k_; }
  GroupId label(NodeId v) const { return labels_[v]; }
  const std::vector<GroupId>& labels() const { return labels_; }
  double edges() const { return two_e_ / 2.0; }

  // Profile log-likelihood: omega at its maximum-likelihood value for S.
  double profile_score() const { return 0.5 * term_sum_ - edges(); }

  // Log-likelihood of the current S under a fixed omega.
  double score_with(const OmegaMatrix& omega) const {
    double sum = 0.0;
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b) {
        const double w = omega(a, b);
        if (s_(a, b) > 0.0) {
          if (w <= 0.0) return -std::numeric_limits<double>::infinity();
          sum += s_(a, b) * std::log(w);
        }
        sum -= t_[a] * t_[b] * w / two_e_;
      }
    return 0.5 * sum;
  }

  void resync() {
    term_sum_ = 0.0;
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b) term_sum_ += profile_term(s_(a, b), t_[a], t_[b], two_e_);
  }

  // Fills neighbour_counts_ with the number of neighbours of v per group.
  void count_neighbours(NodeId v) {
    std::fill(neighbour_counts_.begin(), neighbour_counts_.end(), 0.0);
    for (NodeId u : g_.out_neighbors(v)) neighbour_counts_[labels_[u]] += 1.0;
  }

  // Block count after moving v (counted by count_neighbours) from r to s.
  double moved_count(std::size_t a, std::size_t b, std::size_t r, std::size_t s) const {
    double value = s_(a, b);
    if (a == r) value -= neighbour_counts_[b];
    if (b == r) value -= neighbour_counts_[a];
    if (a == s) value += neighbour_counts_[b];
    if (b == s) value += neighbour_counts_[a];
    return value;
  }

  // Profile score if v moved from r to s. Only rows and columns r, s change.
  double profile_after_move(NodeId v, std::size_t r, std::size_t s) const {
    const double k_v = static_cast<double>(g_.degree(v));
    auto t_new = [&](std::size_t a) { return a == r ? t_[a] - k_v : a == s ? t_[a] + k_v : t_[a]; };
    double delta = 0.0;
    auto visit = [&](std::size_t a, std::size_t b) {
      delta -= profile_term(s_(a, b), t_[a], t_[b], two_e_);
      delta += profile_term(moved_count(a, b, r, s), t_new(a), t_new(b), two_e_);
    };
    for (std::size_t b = 0; b < k_; ++b) {
      visit(r, b);
      visit(s, b);
    }
    for (std::size_t a = 0; a < k_; ++a) {
      if (a == r || a == s) continue;
      visit(a, r);
      visit(a, s);
    }
    return 0.5 * (term_sum_ + delta) - edges();
  }

  // Score if v moved from r to s with omega held fixed. O(K^2); only the
  // experimental alternating scheme uses it.
  double fixed_after_move(NodeId v, std::size_t r, std::size_t s, const OmegaMatrix& omega) const {
    const double k_v = static_cast<double>(g_.degree(v));
    double sum = 0.0;
    auto t_new = [&](std::size_t a) { return a == r ? t_[a] - k_v : a == s ? t_[a] + k_v : t_[a]; };
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b) {
        const double count = moved_count(a, b, r, s);
        const double w = omega(a, b);
        if (count > 0.0) {
          if (w <= 0.0) return -std::numeric_limits<double>::infinity();
          sum += count * std::log(w);
        }
        sum -= t_new(a) * t_new(b) * w / two_e_;
      }
    return 0.5 * sum;
  }

  // Applies a move whose neighbour counts are loaded in neighbour_counts_.
  void apply_move(NodeId v, std::size_t r, std::size_t s) {
    SquareMatrix<double> updated = s_;
    for (std::size_t b = 0; b < k_; ++b) {
      updated(r, b) = moved_count(r, b, r, s);
      updated(s, b) = moved_count(s, b, r, s);
      updated(b, r) = moved_count(b, r, r, s);
      updated(b, s) = moved_count(b, s, r, s);
    }
    s_ = std::move(updated);
    const double k_v = static_cast<double>(g_.degree(v));
    t_[r] -= k_v;
    t_[s] += k_v;
    labels_[v] = static_cast<GroupId>(s);
    resync();
  }

  OmegaMatrix mle_omega() const {
    OmegaMatrix omega(k_, 0.0);
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b)
        if (t_[a] > 0.0 && t_[b] > 0.0) omega(a, b) = two_e_ * s_(a, b) / (t_[a] * t_[b]);
    return omega;
  }

 private:
  const Graph& g_;
  std::size_t k_;
  std::vector<GroupId> labels_;
  SquareMatrix<double> s_;
  std::vector<double> t_;
  std::vector<double> neighbour_counts_;
  double two_e_ = 0.0;
  double term_sum_ = 0.0;
};

double improvement_tolerance(double score) { return 1e-10 * std::max(1.0, std::abs(score)); }

void check_inputs(const Graph& g, std::size_t k) {
  if (g.directed()) throw UnsupportedError("greedy dc-SBM inference is implemented for undirected graphs");
  if (k == 0) throw InputError("K must be at least 1");
  if (g.node_count() == 0) throw InputError("cannot infer groups on an empty graph");
  if (k > g.node_count()) throw InputError(fmt::format("K = {} exceeds the {} nodes", k, g.node_count()));
  if (g.edge_count() == 0) throw DegenerateError("dc-SBM inference needs at least one edge");
}

std::vector<GroupId> random_labels(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<GroupId> labels(n);
  for (auto& l : labels) l = static_cast<GroupId>(rng.below(k));
  return labels;
}

OmegaMatrix random_omega(std::size_t k, Rng& rng) {
  OmegaMatrix omega(k, 1.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) omega(a, b) = omega(b, a) = 1.0 + 0.1 * rng.uniform(-1.0, 1.0);
  return omega;
}

struct RestartOutcome {
  std::vector<GroupId> labels;
  double score = 0.0;
  std::size_t sweeps = 0;
  std::vector<double> sweep_scores;
};

RestartOutcome run_restart(const Graph& g, std::size_t k, std::size_t max_sweeps, RngSeed seed) {
  Rng rng(seed);
  LabelState state(g, k, random_labels(g.node_count(), k, rng));
  OmegaMatrix omega = random_omega(k, rng);
  bool omega_is_mle = false;
  double current = state.score_with(omega);

  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  RestartOutcome out;
  for (std::size_t sweep = 0; sweep < max_sweeps && k > 1; ++sweep) {
    shuffle(order.begin(), order.end(), rng);
    bool moved = false;
    for (NodeId v : order) {
      const std::size_t r = state.label(v);
      state.count_neighbours(v);
      double best = current;
      std::size_t best_group = r;
      for (std::size_t s = 0; s < k; ++s) {
        if (s == r) continue;
        const double candidate = state.profile_after_move(v, r, s);
        if (candidate > best + improvement_tolerance(best)) {
          best = candidate;
          best_group = s;
        }
      }
      if (best_group != r) {
        state.apply_move(v, r, best_group);
        omega_is_mle = true;
        current = state.profile_score();
        moved = true;
      }
    }
    ++out.sweeps;
    out.sweep_scores.push_back(omega_is_mle ? state.profile_score() : current);
    if (!moved) break;
  }
  out.labels = state.labels();
  out.score = state.profile_score();
  return out;
}

InferenceResult finish(const Graph& g, std::size_t k, RestartOutcome best, std::size_t restart) {
  InferenceResult result;
  result.partition = Partition(std::move(best.labels), k);
  const auto bs = block_summary(g, result.partition);
  result.omega = estimate_omega(bs);
  result.score = dcsbm_log_likelihood(bs, result.omega).value;
  result.sweeps = best.sweeps;
  result.restart = restart;
  result.sweep_scores = std::move(best.sweep_scores);
  return result;
}

}  // namespace

InferenceResult greedy_optimize(const Graph& g, std::size_t k, const GreedyOptions& options) {
  check_inputs(g, k);
  if (options.restarts == 0) throw InputError("at least one restart is required");
  RestartOutcome best;
  std::size_t best_restart = 0;
  bool have_best = false;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    auto outcome = run_restart(g, k, options.max_sweeps, derive_seed(options.seed, r));
    if (!have_best || outcome.score > best.score + improvement_tolerance(best.score)) {
      best = std::move(outcome);
      best_restart = r;
      have_best = true;
    }
  }
  return finish(g, k, std::move(best), best_restart);
}

InferenceResult alternating_optimize(const Graph& g, std::size_t k, const GreedyOptions& options,
                                     std::size_t rounds) {
  check_inputs(g, k);
  if (options.restarts == 0) throw InputError("at least one restart is required");
  RestartOutcome best;
  std::size_t best_restart = 0;
  bool have_best = false;
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    Rng rng(derive_seed(options.seed, restart));
    LabelState state(g, k, random_labels(g.node_count(), k, rng));
    OmegaMatrix omega = random_omega(k, rng);
    std::vector<NodeId> order(g.node_count());
    std::iota(order.begin(), order.end(), NodeId{0});
    RestartOutcome out;
    for (std::size_t round = 0; round < rounds; ++round) {
      bool changed = false;
      for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
        shuffle(order.begin(), order.end(), rng);
        bool moved = false;
        for (NodeId v : order) {
          const std::size_t r = state.label(v);
          state.count_neighbours(v);
          double best_score = state.score_with(omega);
          std::size_t best_group = r;
          for (std::size_t s = 0; s < k; ++s) {
            if (s == r) continue;
            const double candidate = state.fixed_after_move(v, r, s, omega);
            if (candidate > best_score + improvement_tolerance(best_score)) {
              best_score = candidate;
              best_group = s;
            }
          }
          if (best_group != r) {
            state.apply_move(v, r, best_group);
            moved = changed = true;
          }
        }
        ++out.sweeps;
        if (!moved) break;
      }
      omega = state.mle_omega();
      out.sweep_scores.push_back(state.profile_score());
      if (!changed) break;
    }
    out.labels = state.labels();
    out.score = state.profile_score();
    if (!have_best || out.score > best.score + improvement_tolerance(best.score)) {
      best = std::move(out);
      best_restart = restart;
      have_best = true;
    }
  }
  return finish(g, k, std::move(best), best_restart);
}

double normalized_mutual_information(const Partition& x, const Partition& y) {
  if (x.node_count() != y.node_count()) throw InputError("partitions cover different node counts");
  const std::size_t n = x.node_count();
  if (n == 0) throw InputError("NMI of empty partitions is undefined");
  const std::size_t kx = x.group_count(), ky = y.group_count();
  std::vector<double> joint(kx * ky, 0.0), px(kx, 0.0), py(ky, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto a = x.label(static_cast<NodeId>(v));
    const auto b = y.label(static_cast<NodeId>(v));
    joint[a * ky + b] += 1.0;
    px[a] += 1.0;
    py[b] += 1.0;
  }
  const double total = static_cast<double>(n);
  auto entropy = [&](const std::vector<double>& p) {
    double h = 0.0;
    for (double c : p)
      if (c > 0.0) h -= (c / total) * std::log(c / total);
    return h;
  };
  const double hx = entropy(px), hy = entropy(py);
  if (hx + hy == 0.0) return 1.0;
  double mi = 0.0;
  for (std::size_t a = 0; a < kx; ++a)
    for (std::size_t b = 0; b < ky; ++b) {
      const double c = joint[a * ky + b];
      if (c > 0.0) mi += (c / total) * std::log(c * total / (px[a] * py[b]));
    }
  return 2.0 * mi / (hx + hy);
}

// --- structure census -------------------------------------------------------

std::string_view to_string(StructureLabel label) {
  switch (label) {
    case StructureLabel::Community: return "community";
    case StructureLabel::Bipartite: return "bipartite";
    case StructureLabel::CorePeriphery: return "core-periphery";
  }
  return "?";
}

bool PairStructure::has(StructureLabel label) const {
  switch (label) {
    case StructureLabel::Community: return community;
    case StructureLabel::Bipartite: return bipartite;
    case StructureLabel::CorePeriphery: return core_periphery;
  }
  return false;
}

std::vector<PairStructure> classify_structures(const BlockSummary& bs, const OmegaMatrix& omega, double f) {
  require_shape(bs, omega);
  if (bs.group_count() < 2) throw InputError("structure classification needs K >= 2");
  if (!(f > 0.0 && f <= 1.0)) throw InputError("structure threshold f must lie in (0, 1]");
  const std::size_t k = bs.group_count();
  std::vector<PairStructure> out;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      PairStructure p;
      p.a = a;
      p.b = b;
      const auto mass = bs.counts(a, a) + bs.counts(a, b) + bs.counts(b, a) + bs.counts(b, b);
      p.mass_dominant = mass > bs.edge_count;
      if (p.mass_dominant) {
        const double lo = std::min(omega(a, a), omega(b, b));
        const double hi = std::max(omega(a, a), omega(b, b));
        const double between = omega(a, b);
        p.community = between < f * lo;
        p.bipartite = f * between > hi;
        p.core_periphery = lo < f * between && lo < f * hi;
      }
      out.push_back(p);
    }
  }
  return out;
}

double Census::proportion(StructureLabel label) const {
  return samples == 0 ? 0.0 : static_cast<double>(counts[static_cast<std::size_t>(label)]) / static_cast<double>(samples);
}

Census ensemble_census(const Graph& g, std::size_t k, const CensusOptions& options) {
  if (options.samples == 0) throw InputError("the census needs at least one sample");
  check_inputs(g, k);
  if (k < 2) throw InputError("the census classifies group pairs, so K must be at least 2");
  if (!(options.threshold > 0.0 && options.threshold <= 1.0)) throw InputError("f must lie in (0, 1]");

  std::vector<std::array<bool, 3>> found(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t i) {
    const RngSeed sample_seed = derive_seed(options.seed, i);
    const Graph sample = configuration_sample(g, derive_seed(sample_seed, 0), options.swaps_per_edge);
    const GreedyOptions greedy{options.restarts, options.max_sweeps, derive_seed(sample_seed, 1)};
    const auto fit = greedy_optimize(sample, k, greedy);
    const auto bs = block_summary(sample, fit.partition);
    std::array<bool, 3> seen{};
    for (const auto& pair : classify_structures(bs, fit.omega, options.threshold))
      for (auto label : kStructureLabels) seen[static_cast<std::size_t>(label)] |= pair.has(label);
    found[i] = seen;
  });

  Census census;
  census.samples = options.samples;
  for (const auto& seen : found)
    for (std::size_t l = 0; l < 3; ++l) census.counts[l] += seen[l];
  return census;
}

}  // namespace meso
