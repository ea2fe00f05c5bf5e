#include "poslp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "poslp/error.hpp"
#include "poslp/log.hpp"

namespace poslp {

namespace {

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace

PackingInstance normalize(const SparseNonnegMatrix& raw) {
  if (const auto empty = raw.empty_cols(); !empty.empty()) {
    throw Error(ErrorKind::ZeroColumn,
                "column " + std::to_string(empty.front() + 1) +
                    " has no entries; the packing objective is unbounded");
  }
  if (const auto empty = raw.empty_rows(); !empty.empty()) {
    warn(std::to_string(empty.size()) +
         " empty row(s) in packing matrix; those constraints are vacuous");
  }
  double scale = std::numeric_limits<double>::infinity();
  for (double v : raw.column_maxes()) scale = std::min(scale, v);
  return {raw.divided_by(scale), scale};
}

std::vector<double> unscale_packing_solution(std::span<const double> x,
                                             double column_scale) {
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v /= column_scale;
  return out;
}

CoveringInstance make_covering(const SparseNonnegMatrix& raw_constraints) {
  if (const auto empty = raw_constraints.empty_rows(); !empty.empty()) {
    throw Error(ErrorKind::ZeroColumn,
                "covering constraint " + std::to_string(empty.front() + 1) +
                    " has no entries and cannot be satisfied");
  }
  // Row norms of C are the column norms of the dual packing matrix.
  std::vector<double> row_max(raw_constraints.rows(), 0.0);
  for (const auto& e : raw_constraints.entries()) {
    row_max[e.row] = std::max(row_max[e.row], e.value);
  }
  double scale = std::numeric_limits<double>::infinity();
  for (double v : row_max) scale = std::min(scale, v);
  return {raw_constraints.divided_by(scale), scale};
}

PackingInstance dualize(const CoveringInstance& covering) {
  auto packing = normalize(covering.constraints.transposed());
  packing.column_scale *= covering.column_scale;
  return packing;
}

SparseNonnegMatrix generate_random(std::size_t n, std::size_t m,
                                   double density, std::uint64_t seed) {
  if (n == 0 || m == 0) {
    throw Error(ErrorKind::DimensionMismatch, "generate_random: n, m >= 1");
  }
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorKind::OutOfDomain, "generate_random: density in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<Entry> entries;
  // Columns are independent, so redrawing an empty column conditions the
  // whole matrix on having no empty column.
  std::vector<Entry> column;
  for (std::size_t i = 0; i < n; ++i) {
    do {
      column.clear();
      for (std::size_t j = 0; j < m; ++j) {
        if (unit_interval(rng) < density) {
          column.push_back({j, i, 1.0 - unit_interval(rng)});
        }
      }
    } while (column.empty());
    entries.insert(entries.end(), column.begin(), column.end());
  }
  return SparseNonnegMatrix(m, n, std::move(entries));
}

}  // namespace poslp
