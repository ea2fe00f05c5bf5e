#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "poslp/dbscd.hpp"
#include "poslp/dual_average.hpp"
#include "poslp/instance.hpp"
#include "poslp/smoothing.hpp"

namespace poslp {

/// Iteration budget for the covering pipeline:
/// max(ceil(6 w ln(2n) / (alpha eps)), ceil(2 w^2 ln(n/eps) / eps^2)).
std::uint64_t covering_iterations(const SolverParams& params, std::size_t n);

/// sum_p / count. Throws EmptyAccumulator when nothing was added.
std::vector<double> average(const DualAverage& acc);

struct DualFix {
  std::vector<double> y;          // repaired and rescaled by 1/(1 - 3 eps)
  std::size_t num_fixed = 0;      // constraints that needed a repair
  double slack_min = 0.0;         // min_i (A^T y' - 1)_i before rescaling
};

/// Repairs every covering constraint i whose
/// lambda_i = (A^T y_bar)_i - 1 + eps <= -2 eps by adding -lambda_i / A[j][i]
/// to y_bar[j], j the row of the largest entry of column i (lowest index on
/// ties), then divides by 1 - 3 eps. `packing` is the dual packing instance,
/// so the covering constraints are A^T y >= 1. Throws EpsilonOutOfRange
/// unless eps is in (0, 1/10].
DualFix fix_dual(std::span<const double> y_bar, const PackingInstance& packing,
                 double epsilon);

struct CoveringReport {
  std::vector<double> y_final;  // original covering units
  double objective = 0.0;       // 1^T y_final
  std::size_t num_fixed = 0;
  double slack_min = 0.0;
  std::uint64_t T_cov = 0;
  PackingReport packing_report;
};

/// Dualize, run the packing solver for T_cov iterations, average the
/// penalties, repair, and map back to original units. `options` is passed
/// to the packing solver; its iteration_override is replaced by T_cov
/// unless set, and penalty accumulation is always on.
CoveringReport solve_covering(const CoveringInstance& covering, double epsilon,
                              std::uint64_t seed, SolveOptions options = {});

}  // namespace poslp
