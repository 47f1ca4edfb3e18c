#include "meso/null_models.hpp"

#include <cmath>

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

std::string_view to_string(NullKind kind) {
  switch (kind) {
    case NullKind::Configuration: return "config";
    case NullKind::ErdosRenyi: return "er";
    case NullKind::ScaledConfiguration: return "scaled";
    case NullKind::BlockScaledConfiguration: return "block-scaled";
  }
  return "?";
}

NullModel NullModel::scaled(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InputError("scaled configuration needs a finite gamma > 0");
  return {NullKind::ScaledConfiguration, gamma, {}};
}

NullModel NullModel::block_scaled(SquareMatrix<double> gamma) {
  for (double v : gamma.values())
    if (!std::isfinite(v)) throw InputError("block-scaled gamma entries must be finite");
  return {NullKind::BlockScaledConfiguration, 1.0, std::move(gamma)};
}

double NullModel::gamma_for(std::size_t a, std::size_t b) const {
  switch (kind) {
    case NullKind::ScaledConfiguration: return gamma;
    case NullKind::BlockScaledConfiguration: return block_gamma(a, b);
    default: return 1.0;
  }
}

void check_supported(const NullModel& null, const BlockSummary& bs) {
  if (bs.edge_count <= 0) throw DegenerateError("null-model expectations need at least one edge");
  if (bs.directed && (null.kind == NullKind::ErdosRenyi || null.kind == NullKind::ScaledConfiguration))
    throw UnsupportedError(fmt::format("the {} null has no directed form", to_string(null.kind)));
  if (null.kind == NullKind::BlockScaledConfiguration && null.block_gamma.size() != bs.group_count())
    throw InputError(fmt::format("block-scaled gamma is {0}x{0} but the partition has {1} groups",
                                 null.block_gamma.size(), bs.group_count()));
}

SquareMatrix<double> expected_blocks(const NullModel& null, const BlockSummary& bs) {
  check_supported(null, bs);
  const std::size_t k = bs.group_count();
  const double mass = static_cast<double>(bs.total_mass());
  SquareMatrix<double> out(k, 0.0);
  if (null.kind == NullKind::ErdosRenyi) {
    // p N_a N_b with p = 2E/N^2; numerator formed first so integer cases stay exact.
    const double n = static_cast<double>(bs.node_count());
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        out(a, b) = mass * static_cast<double>(bs.sizes[a]) * static_cast<double>(bs.sizes[b]) / (n * n);
    return out;
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      out(a, b) = null.gamma_for(a, b) * static_cast<double>(bs.t_out[a]) * static_cast<double>(bs.t_in[b]) / mass;
  return out;
}

}  // namespace meso
