#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "poslp/instance.hpp"
#include "poslp/parallel.hpp"

namespace poslp {

/// Constants driving the solver, all derived from (n, m, epsilon).
struct SolverParams {
  double epsilon = 0.0;
  double mu = 0.0;      // smoothing parameter
  double alpha = 0.0;   // multiplicative step size
  int w = 0;            // number of gradient buckets
  std::uint64_t T = 0;  // iteration budget
  std::size_t n = 0;
  std::size_t m = 0;
};

/// Number of dyadic gradient buckets covering (eps, 1]: ceil(log2(1/eps)),
/// at least 1.
int bucket_count(double epsilon);

/// mu = eps / (4 ln(nm/eps)), alpha = mu / 20, w = ceil(log2(1/eps)),
/// T = ceil(10 w ln(2n) / (alpha eps)). Throws EpsilonOutOfRange unless
/// eps is in (0, 1/2].
SolverParams derive_params(std::size_t n, std::size_t m, double epsilon);

/// Exponents above this are treated as overflow of the penalty terms.
inline constexpr double kMaxPenaltyExponent = 700.0;

/// Everything computed from one point x: row activities Ax, penalties
/// p_j = exp(((Ax)_j - 1) / mu), gradient -1 + A^T p and the smoothed value
/// f = -1^T x + mu 1^T p.
struct Evaluation {
  std::vector<double> activity;
  std::vector<double> penalty;
  std::vector<double> gradient;
  double sum_x = 0.0;
  double sum_penalty = 0.0;
  double value = 0.0;
  double max_activity = 0.0;
};

/// Evaluates the smoothed packing objective. Row and column passes may run
/// on an Executor; every output is accumulated in a fixed order, so results
/// do not depend on the thread count.
class SmoothedObjective {
 public:
  /// Instances with at least this many nonzeros use the executor.
  static constexpr std::size_t kParallelNnz = std::size_t{1} << 15;

  SmoothedObjective(const PackingInstance& instance, double mu,
                    Executor* executor = nullptr);

  double mu() const noexcept { return mu_; }
  const PackingInstance& instance() const noexcept { return *instance_; }

  /// Fills `out` (resized as needed). Throws NumericalOverflow naming the
  /// first offending row.
  void evaluate(std::span<const double> x, Evaluation& out) const;
  Evaluation evaluate(std::span<const double> x) const;

  /// Same result as evaluate(x, out), given that `out` already holds the
  /// evaluation of a previous point: penalties of rows whose activity is
  /// bitwise unchanged are reused instead of recomputed.
  void update(std::span<const double> x, Evaluation& out) const;

 private:
  bool parallel() const noexcept;
  void activity_gather(std::span<const double> x, Evaluation& out,
                       std::size_t begin, std::size_t end) const;
  void penalties_pass(Evaluation& out, std::size_t begin, std::size_t end,
                      const std::vector<double>* previous) const;
  void gradient_gather(Evaluation& out, std::size_t begin, std::size_t end) const;
  void run(std::span<const double> x, Evaluation& out, bool reuse) const;

  const PackingInstance* instance_;
  double mu_;
  double inv_mu_;
  Executor* executor_;

  // Scratch for update(); a SmoothedObjective is used by one thread at a time.
  mutable std::vector<double> previous_activity_;
};

std::vector<double> penalties(const PackingInstance& instance,
                              std::span<const double> x, double mu);

/// f_mu(x) = -1^T x + mu sum_j p_j(x).
double objective(const PackingInstance& instance, std::span<const double> x,
                 double mu);

struct GradientResult {
  std::vector<double> gradient;
  std::vector<double> penalty;
};

/// Gradient together with the penalties it was computed from.
GradientResult gradient(const PackingInstance& instance,
                        std::span<const double> x, double mu);

/// x0[i] = (1 - eps/2) / (n * max_j A[j][i]).
std::vector<double> initial_point(const PackingInstance& instance,
                                  double epsilon);

}  // namespace poslp
