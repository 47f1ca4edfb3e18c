#include "meso/block_modularity.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "meso/errors.hpp"

namespace meso {

BlockMatrix::BlockMatrix(std::size_t k, std::vector<int> entries, bool directed)
    : k_(k), directed_(directed), entries_(std::move(entries)) {
  if (k_ == 0) throw InputError("block matrix needs K >= 1");
  if (entries_.size() != k_ * k_) throw InputError(fmt::format("block matrix needs {} entries", k_ * k_));
  for (int v : entries_)
    if (v != 1 && v != -1) throw InputError("block matrix entries must be +1 or -1");
  if (!directed_)
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = a + 1; b < k_; ++b)
        if ((*this)(a, b) != (*this)(b, a)) throw InputError("undirected block matrix must be symmetric");
}

BlockMatrix::BlockMatrix(std::initializer_list<std::initializer_list<int>> rows, bool directed) {
  std::vector<int> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw InputError("block matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  *this = BlockMatrix(rows.size(), std::move(flat), directed);
}

BlockMatrix BlockMatrix::community(std::size_t k) {
  std::vector<int> e(k * k, -1);
  for (std::size_t a = 0; a < k; ++a) e[a * k + a] = 1;
  return BlockMatrix(k, std::move(e), false);
}

BlockMatrix BlockMatrix::negated() const {
  BlockMatrix out = *this;
  for (int& v : out.entries_) v = -v;
  return out;
}

BlockMatrix BlockMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != k_) throw InputError("permutation length must equal K");
  std::vector<int> e(k_ * k_);
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = 0; b < k_; ++b) e[a * k_ + b] = (*this)(perm[a], perm[b]);
  return BlockMatrix(k_, std::move(e), directed_);
}

BlockMatrix parse_block_matrix(std::string_view text, bool directed) {
  std::vector<std::vector<int>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, nl - pos);
    std::vector<int> row;
    std::size_t i = 0;
    bool comment = false;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      const auto tok = line.substr(i, j - i);
      if (row.empty() && tok.front() == '#') {
        comment = true;
        break;
      }
      if (tok == "+1" || tok == "+" || tok == "1") row.push_back(1);
      else if (tok == "-1" || tok == "-") row.push_back(-1);
      else throw ParseError(fmt::format("unexpected block entry '{}'", tok), line_no);
      i = j;
    }
    if (!comment && !row.empty()) {
      if (!rows.empty() && row.size() != rows.front().size())
        throw ParseError("block matrix rows have different lengths", line_no);
      rows.push_back(std::move(row));
    }
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  if (rows.empty()) throw ParseError("empty block matrix", 0);
  if (rows.front().size() != rows.size())
    throw ParseError(fmt::format("block matrix has {} rows of {} entries", rows.size(), rows.front().size()), 0);
  std::vector<int> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return BlockMatrix(rows.size(), std::move(flat), directed);
}

std::string format_block_matrix(const BlockMatrix& b) {
  std::string out;
  for (std::size_t a = 0; a < b.size(); ++a) {
    for (std::size_t c = 0; c < b.size(); ++c) {
      if (c) out += ' ';
      out += b(a, c) > 0 ? "+1" : "-1";
    }
    out += '\n';
  }
  return out;
}

QMatrix q_matrix(const BlockSummary& bs, const NullModel& null) {
  const auto expected = expected_blocks(null, bs);
  const std::size_t k = bs.group_count();
  QMatrix q{SquareMatrix<double>(k, 0.0), bs.edge_count, bs.directed};
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) q.values(a, b) = static_cast<double>(bs.counts(a, b)) - expected(a, b);
  return q;
}

double block_modularity(const QMatrix& q, const BlockMatrix& b) {
  if (q.size() != b.size())
    throw InputError(fmt::format("Q is {0}x{0} but the block matrix is {1}x{1}", q.size(), b.size()));
  if (b.directed() && !q.directed) throw InputError("directed block matrix applied to an undirected graph");
  double sum = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t c = 0; c < q.size(); ++c) sum += q.values(a, c) * b(a, c);
  return sum / q.normalizer();
}

double weighted_block_modularity(const QMatrix& q, const SquareMatrix<double>& weights) {
  if (q.size() != weights.size())
    throw InputError(fmt::format("Q is {0}x{0} but the weights are {1}x{1}", q.size(), weights.size()));
  double sum = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t c = 0; c < q.size(); ++c) sum += q.values(a, c) * weights(a, c);
  return sum / q.normalizer();
}

double newman_modularity(const BlockSummary& bs) {
  if (bs.directed) throw UnsupportedError("Newman modularity is defined here for undirected graphs");
  if (bs.edge_count <= 0) throw DegenerateError("modularity needs at least one edge");
  const double two_e = static_cast<double>(bs.total_mass());
  double sum = 0.0;
  for (std::size_t a = 0; a < bs.group_count(); ++a) {
    const double t = static_cast<double>(bs.t_out[a]);
    sum += static_cast<double>(bs.counts(a, a)) - t * t / two_e;
  }
  return sum / two_e;
}

SumRules sum_rules(const QMatrix& q, const NullModel& null, const BlockSummary& bs) {
  const std::size_t k = q.size();
  SumRules r;
  r.row.assign(k, 0.0);
  r.column.assign(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      r.row[a] += q.values(a, b);
      r.column[b] += q.values(a, b);
      r.global += q.values(a, b);
    }
  }

  const double mass = static_cast<double>(bs.total_mass());
  r.row_expected.assign(k, 0.0);
  r.column_expected.assign(k, 0.0);
  switch (null.kind) {
    case NullKind::Configuration:
      r.global_expected = 0.0;
      break;
    case NullKind::ErdosRenyi: {
      const double n = static_cast<double>(bs.node_count());
      for (std::size_t a = 0; a < k; ++a) {
        r.row_expected[a] = static_cast<double>(bs.t_out[a]) - mass * static_cast<double>(bs.sizes[a]) / n;
        r.column_expected[a] = static_cast<double>(bs.t_in[a]) - mass * static_cast<double>(bs.sizes[a]) / n;
      }
      r.global_expected = 0.0;
      break;
    }
    case NullKind::ScaledConfiguration:
      for (std::size_t a = 0; a < k; ++a) {
        r.row_expected[a] = static_cast<double>(bs.t_out[a]) * (1.0 - null.gamma);
        r.column_expected[a] = static_cast<double>(bs.t_in[a]) * (1.0 - null.gamma);
      }
      r.global_expected = mass * (1.0 - null.gamma);
      break;
    case NullKind::BlockScaledConfiguration:
      r.global_expected = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          const double term = static_cast<double>(bs.t_out[a]) * static_cast<double>(bs.t_in[b]) *
                              (1.0 - null.block_gamma(a, b)) / mass;
          r.row_expected[a] += term;
          r.column_expected[b] += term;
          r.global_expected += term;
        }
      }
      break;
  }
  return r;
}

CorePeripheryIdentity core_periphery_identity(const QMatrix& q) {
  if (q.size() != 2) throw InputError("the core-periphery identity is a K = 2 statement");
  CorePeripheryIdentity id;
  id.core_periphery = block_modularity(q, BlockMatrix({{1, 1}, {1, -1}}, q.directed));
  id.bipartite = block_modularity(q, BlockMatrix({{-1, 1}, {1, -1}}, q.directed));
  id.residual = id.core_periphery - id.bipartite / 2.0;
  return id;
}

}  // namespace meso
