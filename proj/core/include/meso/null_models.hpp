#pragma once

#include <string_view>

#include "meso/graph.hpp"
#include "meso/matrix.hpp"

namespace meso {

enum class NullKind {
  Configuration,             // k_i k_j / 2E
  ErdosRenyi,                // p = 2E / N^2, self-pairs included in the support
  ScaledConfiguration,       // gamma k_i k_j / 2E
  BlockScaledConfiguration,  // gamma_{c(i)c(j)} k_i k_j / 2E
};

std::string_view to_string(NullKind kind);

struct NullModel {
  NullKind kind = NullKind::Configuration;
  double gamma = 1.0;                // ScaledConfiguration
  SquareMatrix<double> block_gamma;  // BlockScaledConfiguration; entries may be negative

  static NullModel configuration() { return {}; }
  static NullModel erdos_renyi() { return {NullKind::ErdosRenyi, 1.0, {}}; }
  static NullModel scaled(double gamma);
  static NullModel block_scaled(SquareMatrix<double> gamma);

  // Scaling applied to the configuration expectation of block (a, b).
  double gamma_for(std::size_t a, std::size_t b) const;
};

// Throws UnsupportedError for null/directedness combinations without a formula
// (ER and scaled on directed graphs) and InputError for shape mismatches.
void check_supported(const NullModel& null, const BlockSummary& bs);

// Expected block counts S^P(a, b) under the null, computed from (S, T, E, N_a).
SquareMatrix<double> expected_blocks(const NullModel& null, const BlockSummary& bs);

}  // namespace meso
