#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "poslp/instance.hpp"
#include "poslp/sparse_matrix.hpp"

namespace poslp {

enum class OracleStatus { Optimal, Unbounded, Infeasible };

/// Exact (to floating point) optimum of a small LP, in the stored units of
/// the instance it was computed from.
struct OracleSolution {
  double opt_value = 0.0;
  std::vector<double> x_opt;
  OracleStatus status = OracleStatus::Optimal;
  std::size_t pivots = 0;
};

inline constexpr std::size_t kOracleSizeCap = 500;  // m + n
inline constexpr std::size_t kEnumerationCap = 5;   // variables
inline constexpr double kPivotTolerance = 1e-10;

/// Dense primal simplex with Bland's rule on  max 1^T x, A x <= 1, x >= 0,
/// starting from the slack basis. Throws SizeLimit when m + n exceeds the
/// cap.
OracleSolution simplex_packing(const PackingInstance& instance);

/// Two-phase dense simplex with Bland's rule on  min 1^T y, C y >= 1, y >= 0
/// solved in surplus form, independent of the packing route.
OracleSolution simplex_covering(const CoveringInstance& instance);

/// Best basic feasible point over all choices of tight constraints.
/// Exponential; throws SizeLimit above `max_variables` variables.
OracleSolution enumerate_vertices(const PackingInstance& instance,
                                  std::size_t max_variables = kEnumerationCap);
OracleSolution enumerate_vertices(const CoveringInstance& instance,
                                  std::size_t max_variables = kEnumerationCap);

struct Feasibility {
  bool feasible = false;
  double max_violation = 0.0;
};

enum class Sense { Pack, Cover };

/// Pack: max_j ((A x)_j - 1) against A x <= 1.
/// Cover: max_j (1 - (C y)_j) against C y >= 1 (C = covering constraints).
/// Feasible iff max_violation <= tol and every coordinate >= -tol.
Feasibility check_feasible(std::span<const double> x,
                           const SparseNonnegMatrix& matrix, Sense sense,
                           double tol);
Feasibility check_feasible(std::span<const double> x,
                           const PackingInstance& instance, double tol);
Feasibility check_feasible(std::span<const double> y,
                           const CoveringInstance& instance, double tol);

}  // namespace poslp
