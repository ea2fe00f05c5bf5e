#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "poslp/sparse_matrix.hpp"

namespace poslp {

/// Packing LP  max 1^T x  s.t.  A x <= 1, x >= 0  in normalized form:
/// the stored matrix equals (original A) / column_scale and its smallest
/// column infinity-norm is 1.
struct PackingInstance {
  SparseNonnegMatrix matrix;
  double column_scale = 1.0;

  std::size_t n() const noexcept { return matrix.cols(); }
  std::size_t m() const noexcept { return matrix.rows(); }
};

/// Covering LP  min 1^T y  s.t.  C y >= 1, y >= 0.  `constraints` holds C
/// with one row per covering constraint, so C = A^T for the dual packing
/// matrix A. Stored as (original C) / column_scale, normalized so that the
/// smallest row infinity-norm of C (column norm of A) is 1.
struct CoveringInstance {
  SparseNonnegMatrix constraints;
  double column_scale = 1.0;

  std::size_t num_variables() const noexcept { return constraints.cols(); }
  std::size_t num_constraints() const noexcept { return constraints.rows(); }
};

/// Divides the whole matrix by its smallest column infinity-norm. Zero rows
/// are accepted with a warning; zero columns throw ZeroColumn.
PackingInstance normalize(const SparseNonnegMatrix& raw);

/// Maps a solution of the normalized instance back to original units.
std::vector<double> unscale_packing_solution(std::span<const double> x,
                                             double column_scale);

/// Builds a normalized covering instance from its constraint matrix.
/// A constraint row with no entries can never be satisfied and throws
/// ZeroColumn (it is a zero column of the dual packing matrix).
CoveringInstance make_covering(const SparseNonnegMatrix& raw_constraints);

/// Dual packing instance of a covering LP: the packing matrix is the
/// transpose of the constraint matrix, renormalized. The returned
/// column_scale accumulates the covering scale, so dividing a normalized
/// dual solution by it yields original covering units.
PackingInstance dualize(const CoveringInstance& covering);

/// Random m x n matrix: each entry present independently with probability
/// `density`, values uniform in (0, 1]. Columns that come out empty are
/// redrawn. Deterministic per seed.
SparseNonnegMatrix generate_random(std::size_t n, std::size_t m,
                                   double density, std::uint64_t seed);

}  // namespace poslp
