#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "poslp/dual_average.hpp"
#include "poslp/instance.hpp"
#include "poslp/smoothing.hpp"

namespace poslp {

inline constexpr int kNoBucket = -1;

/// Per-coordinate split of a gradient into small (|g| <= eps), medium
/// (capped at 1) and large (excess over 1) parts, plus the dyadic bucket of
/// the medium part.
struct TruncatedGradient {
  std::vector<double> zeta;
  std::vector<double> xi;
  std::vector<double> eta;
  std::vector<int> bucket;  // kNoBucket where xi == 0

  std::size_t size() const noexcept { return xi.size(); }
};

/// Bucket t in [0, w-1] with |xi| in (eps 2^t, eps 2^(t+1)], values above
/// eps 2^w clamped to w-1; nullopt for xi == 0. Throws OutOfDomain for
/// 0 < |xi| <= eps.
std::optional<int> bucket_index(double xi, double epsilon, int w);

/// Throws GradientBelowMinusOne if some entry is below -1.
TruncatedGradient truncate(std::span<const double> grad, double epsilon);

/// x'[i] = x[i] exp(-alpha xi[i]) for coordinates in bucket t, unchanged
/// elsewhere.
std::vector<double> step(std::span<const double> x,
                         const TruncatedGradient& trunc, int t, double alpha);

/// Bucket chosen at iteration k: uniform on [0, w) from a counter-based
/// generator, so the sequence depends only on (seed, k).
int draw_bucket(std::uint64_t seed, std::uint64_t k, int w) noexcept;

struct IterationRecord {
  std::uint64_t k = 0;
  int chosen_bucket = 0;
  double f_value = 0.0;           // f_mu(x_k)
  double max_row_activity = 0.0;  // max_j (A x_k)_j
  std::size_t updated_count = 0;
  std::uint64_t work = 0;         // nonzeros touched by the gradient
};

/// Read-only view of the solver state handed to an observer, before the
/// update of iteration k is applied.
struct IterationState {
  std::uint64_t k = 0;
  int chosen_bucket = 0;
  std::span<const double> x;
  const Evaluation* evaluation = nullptr;
  std::span<const int> buckets;
  const SolverParams* params = nullptr;
};

struct SolveOptions {
  /// Iteration count to use instead of params.T.
  std::optional<std::uint64_t> iteration_override;
  /// Throw MonotonicityViolation instead of warning.
  bool strict = false;
  std::size_t threads = 1;
  /// Keep every trace_stride-th iteration record; 0 keeps none.
  std::size_t trace_stride = 1;
  bool accumulate_penalties = true;
  /// Also sum the gradients (test hook for the slack identity).
  bool accumulate_gradients = false;
  /// Measurement hook: stop at the first k with f_mu(x_k) <= stop_below.
  std::optional<double> stop_below;
  std::function<void(const IterationState&)> observer;
};

inline constexpr double kMonotonicityTolerance = 1e-9;

/// Summary over every iteration, including those not kept in the trace.
struct RunStatistics {
  std::uint64_t iterations = 0;       // updates performed
  std::uint64_t evaluations = 0;      // gradient recomputations performed
  std::uint64_t monotonicity_violations = 0;
  double max_f_increase = -HUGE_VAL;  // max_k f(x_{k+1}) - f(x_k)
  double max_row_activity = 0.0;      // over x_0 .. x_T
  std::optional<std::uint64_t> target_iteration;
};

struct PackingReport {
  std::vector<double> x_final;  // x_T / (1 + eps), original units
  std::vector<double> x_raw;    // x_T, normalized units
  double objective = 0.0;       // 1^T x_final
  double f_mu_final = 0.0;
  std::vector<IterationRecord> trace;
  SolverParams params;
  DualAverage penalties;               // sum of p(x_k), k < iterations
  std::vector<double> penalty_average; // normalized units
  std::vector<double> gradient_sum;    // when accumulate_gradients
  RunStatistics stats;
  std::uint64_t seed = 0;
  std::uint64_t work = 0;              // iterations * nnz
};

/// Runs the dynamically bucketed selective coordinate descent on a
/// normalized packing instance.
PackingReport solve_packing(const PackingInstance& instance, double epsilon,
                            std::uint64_t seed, const SolveOptions& options = {});

struct LipschitzSample {
  std::size_t coordinate = 0;
  double tau = 0.0;
  double ratio = 0.0;  // grad_i(x(tau)) / grad_i(x_k)
  bool within = true;
};

struct LipschitzReport {
  std::vector<LipschitzSample> samples;
  std::size_t violations = 0;
};

/// For each coordinate of bucket t and each tau, compares the gradient at
/// tau x + (1 - tau) x' (x' the updated point) against the gradient at x.
/// Reports ratios outside [1/2, 3/2] (with `slack`), never throws for them.
LipschitzReport sample_lipschitz_check(const PackingInstance& instance,
                                       std::span<const double> x,
                                       const TruncatedGradient& trunc, int t,
                                       const SolverParams& params,
                                       std::span<const double> taus,
                                       double slack = 1e-9);

}  // namespace poslp
