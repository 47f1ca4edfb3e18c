#include "meso/constraints.hpp"

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

PairContext PairContext::undirected(double s_aa, double s_bb, double s_ab, double s_a_rest, double s_b_rest,
                                    double s_rest) {
  PairContext c;
  c.s_aa = s_aa;
  c.s_bb = s_bb;
  c.s_ab = c.s_ba = s_ab;
  c.s_a_rest = c.s_rest_a = s_a_rest;
  c.s_b_rest = c.s_rest_b = s_b_rest;
  c.s_rest = s_rest;
  return c;
}

PairContext PairContext::directed_isolated(double s_aa, double s_bb, double s_ab, double s_ba, double s_rest) {
  PairContext c;
  c.directed = true;
  c.s_aa = s_aa;
  c.s_bb = s_bb;
  c.s_ab = s_ab;
  c.s_ba = s_ba;
  c.s_rest = s_rest;
  return c;
}

double PairContext::total_mass() const {
  return s_aa + s_bb + s_ab + s_ba + s_a_rest + s_rest_a + s_b_rest + s_rest_b + s_rest;
}

PairContext pair_context(const BlockSummary& bs, std::size_t a, std::size_t b) {
  const std::size_t k = bs.group_count();
  if (a >= k || b >= k) throw InputError(fmt::format("groups ({}, {}) outside 0..{}", a, b, k - 1));
  if (a == b) throw InputError("pair_context needs two distinct groups");
  PairContext c;
  c.directed = bs.directed;
  c.a = a;
  c.b = b;
  auto s = [&](std::size_t x, std::size_t y) { return static_cast<double>(bs.counts(x, y)); };
  c.s_aa = s(a, a);
  c.s_bb = s(b, b);
  c.s_ab = s(a, b);
  c.s_ba = s(b, a);
  for (std::size_t x = 0; x < k; ++x) {
    if (x == a || x == b) continue;
    c.s_a_rest += s(a, x);
    c.s_rest_a += s(x, a);
    c.s_b_rest += s(b, x);
    c.s_rest_b += s(x, b);
    for (std::size_t y = 0; y < k; ++y)
      if (y != a && y != b) c.s_rest += s(x, y);
  }
  c.n_a = static_cast<double>(bs.sizes[a]);
  c.n_b = static_cast<double>(bs.sizes[b]);
  c.n_total = static_cast<double>(bs.node_count());
  return c;
}

Sign compare(double lhs, double rhs) {
  if (lhs > rhs) return Sign::Positive;
  if (lhs < rhs) return Sign::Negative;
  return Sign::Boundary;
}

Sign sign_of(double value) { return compare(value, 0.0); }

namespace {

Sign configuration_sign(const PairContext& c, BlockEntry which) {
  if (!c.directed) {
    if (which == BlockEntry::Within) {
      const double x = c.s_ab + c.s_a_rest;
      return compare(c.s_aa * c.s_rest, x * x - c.s_aa * (c.s_bb + 2.0 * c.s_b_rest));
    }
    return compare(c.s_ab * c.s_rest,
                   (c.s_aa + c.s_a_rest) * (c.s_bb + c.s_b_rest) - c.s_ab * (c.s_ab + c.s_a_rest + c.s_b_rest));
  }
  if (which == BlockEntry::Within)
    return compare(c.s_aa * c.s_rest, (c.s_ab + c.s_a_rest) * (c.s_ba + c.s_rest_a) -
                                          c.s_aa * (c.s_bb + c.s_b_rest + c.s_rest_b));
  return compare(c.s_ab * c.s_rest,
                 (c.s_aa + c.s_a_rest) * (c.s_bb + c.s_rest_b) - c.s_ab * (c.s_ba + c.s_rest_a + c.s_b_rest));
}

}  // namespace

Sign q_sign(const PairContext& c, BlockEntry which, const NullModel& null) {
  const bool within = which == BlockEntry::Within;
  const double s_xy = within ? c.s_aa : c.s_ab;
  const double mass = c.total_mass();
  switch (null.kind) {
    case NullKind::Configuration:
      return configuration_sign(c, which);
    case NullKind::ErdosRenyi: {
      if (c.directed) throw UnsupportedError("the er null has no directed form");
      if (c.n_total <= 0) throw InputError("the ER predicate needs group sizes in the context");
      const double n_y = within ? c.n_a : c.n_b;
      return compare(s_xy * c.n_total * c.n_total, mass * c.n_a * n_y);
    }
    case NullKind::ScaledConfiguration:
    case NullKind::BlockScaledConfiguration: {
      if (c.directed && null.kind == NullKind::ScaledConfiguration)
        throw UnsupportedError("the scaled null has no directed form");
      if (null.kind == NullKind::BlockScaledConfiguration &&
          (c.a >= null.block_gamma.size() || c.b >= null.block_gamma.size()))
        throw InputError("block-scaled gamma does not cover the pair's groups");
      const double gamma = null.gamma_for(c.a, within ? c.a : c.b);
      const double t_x = c.t_out_a();
      const double t_y = within ? c.t_in_a() : c.t_in_b();
      return compare(s_xy * c.s_rest, gamma * t_x * t_y - s_xy * (mass - c.s_rest));
    }
  }
  throw UnsupportedError("unknown null model");
}

Sign cp_detectable(const PairContext& c) {
  if (c.s_bb == 0 && c.isolated_pair())
    return compare(c.s_aa * c.s_rest, c.directed ? c.s_ab * c.s_ba : c.s_ab * c.s_ab);
  return q_sign(c, BlockEntry::Within, NullModel::configuration());
}

Sign ch_detectable(const PairContext& c) {
  if (c.s_ba == 0 && c.isolated_pair()) return compare(c.s_ab * c.s_rest, c.s_aa * c.s_bb);
  return q_sign(c, BlockEntry::Between, NullModel::configuration());
}

Sign nested_core_detectable(double s_ca_cb, double s_ca_pb, double s_cb_pa) {
  return compare(s_ca_cb * (s_ca_cb + s_ca_pb + s_cb_pa), s_ca_pb * s_cb_pa);
}

Sign resolution_merge_preferred(const PairContext& c) {
  if (c.directed) throw UnsupportedError("the resolution-limit test is stated for undirected graphs");
  return compare(c.s_ab * c.total_mass(), c.t_out_a() * c.t_in_b());
}

}  // namespace meso
