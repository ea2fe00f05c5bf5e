#pragma once

// Dense, long-double reimplementations used only as test oracles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "poslp/instance.hpp"
#include "poslp/sparse_matrix.hpp"

namespace ref {

using Dense = std::vector<std::vector<long double>>;  // [row][col]

Dense to_dense(const poslp::SparseNonnegMatrix& a);

std::vector<long double> activity(const Dense& a, std::span<const double> x);
std::vector<long double> penalties(const Dense& a, std::span<const double> x,
                                   long double mu);
long double objective(const Dense& a, std::span<const double> x, long double mu);
std::vector<long double> gradient(const Dense& a, std::span<const double> x,
                                  long double mu);

struct Params {
  long double mu = 0;
  long double alpha = 0;
  int w = 0;
  std::uint64_t T = 0;
  std::uint64_t T_cov = 0;
};
Params params(std::size_t n, std::size_t m, long double eps);

/// Linear scan over the buckets (eps 2^t, eps 2^(t+1)] using exact
/// power-of-two multiples; values above eps 2^w land in w - 1.
std::optional<int> scan_bucket(double xi, double eps, int w);

/// max_j (A x)_j - 1 and max_i (1 - (C y)_i).
long double pack_violation(const Dense& a, std::span<const double> x);
long double cover_violation(const Dense& c, std::span<const double> y);

/// Random strictly positive matrix with no empty column, independent of the
/// library generator.
poslp::SparseNonnegMatrix random_matrix(std::size_t rows, std::size_t cols,
                                        double density, std::mt19937_64& rng);

/// Same but also without empty rows (needed for covering constraints).
poslp::SparseNonnegMatrix random_matrix_full_rows(std::size_t rows,
                                                  std::size_t cols,
                                                  double density,
                                                  std::mt19937_64& rng);

}  // namespace ref
