#include "poslp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "poslp/error.hpp"

namespace poslp {

namespace {

void check_size(std::size_t m, std::size_t n) {
  if (m + n > kOracleSizeCap) {
    throw Error(ErrorKind::SizeLimit,
                "oracle limited to m + n <= " + std::to_string(kOracleSizeCap) +
                    ", got " + std::to_string(m + n));
  }
}

double pivot_limit(std::size_t m, std::size_t n) {
  // 10 * binom(m + n, m), saturating.
  const double log_binom = std::lgamma(static_cast<double>(m + n) + 1.0) -
                           std::lgamma(static_cast<double>(m) + 1.0) -
                           std::lgamma(static_cast<double>(n) + 1.0);
  return log_binom > 40.0 ? 1e18 : 10.0 * std::exp(log_binom);
}

/// Dense tableau for  max c^T z, M z = b, z >= 0, b >= 0, pivoted with
/// Bland's rule. Row `rows_` holds the reduced costs and -objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const {
    return data_[i * (cols_ + 1) + j];
  }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t pivots() const { return pivots_; }

  double value() const { return -at(rows_, cols_); }

  /// Recomputes the reduced-cost row for `cost` against the current basis.
  void set_objective(std::span<const double> cost) {
    for (std::size_t j = 0; j <= cols_; ++j) {
      at(rows_, j) = j < cols_ ? cost[j] : 0.0;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(rows_, j) -= cb * at(i, j);
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    const double piv = at(p, q);
    for (std::size_t j = 0; j <= cols_; ++j) at(p, j) /= piv;
    at(p, q) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == p) continue;
      const double f = at(i, q);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(p, j);
      at(i, q) = 0.0;
    }
    basis_[p] = q;
    ++pivots_;
  }

  /// Runs to optimality over columns where `allowed` is true. Returns false
  /// if the objective is unbounded.
  bool optimize(const std::vector<bool>& allowed, double limit) {
    for (;;) {
      std::size_t q = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && at(rows_, j) > kPivotTolerance) {
          q = j;
          break;
        }
      }
      if (q == cols_) return true;

      std::size_t p = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, q);
        if (a <= kPivotTolerance) continue;
        const double ratio = std::max(0.0, rhs(i)) / a;
        if (p == rows_) {
          best = ratio;
          p = i;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, best);
        if (ratio < best - tie || (ratio <= best + tie && basis_[i] < basis_[p])) {
          best = std::min(best, ratio);
          p = i;
        }
      }
      if (p == rows_) return false;
      if (static_cast<double>(pivots_) >= limit) {
        throw Error(ErrorKind::CycleLimit, "simplex pivot limit reached");
      }
      pivot(p, q);
    }
  }

  std::vector<double> solution(std::size_t count) const {
    std::vector<double> z(count, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < count) z[basis_[i]] = std::max(0.0, rhs(i));
    }
    return z;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

std::vector<std::vector<double>> dense(const SparseNonnegMatrix& a) {
  std::vector<std::vector<double>> out(a.rows(), std::vector<double>(a.cols(), 0.0));
  for (const auto& e : a.entries()) out[e.row][e.col] = e.value;
  return out;
}

/// Solves the square system g z = h in place; false if (near) singular.
bool solve_square(std::vector<std::vector<double>> g, std::vector<double> h,
                  std::vector<double>& z) {
  const std::size_t d = h.size();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < d; ++r) {
      if (std::fabs(g[r][c]) > std::fabs(g[p][c])) p = r;
    }
    if (std::fabs(g[p][c]) < 1e-12) return false;
    std::swap(g[p], g[c]);
    std::swap(h[p], h[c]);
    for (std::size_t r = c + 1; r < d; ++r) {
      const double f = g[r][c] / g[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < d; ++k) g[r][k] -= f * g[c][k];
      h[r] -= f * h[c];
    }
  }
  z.assign(d, 0.0);
  for (std::size_t c = d; c-- > 0;) {
    double s = h[c];
    for (std::size_t k = c + 1; k < d; ++k) s -= g[c][k] * z[k];
    z[c] = s / g[c][c];
  }
  return true;
}

/// Enumerates vertices of { z >= 0 : sign * (rows z) <= sign * 1 } and
/// returns the best by `better` on 1^T z.
OracleSolution enumerate(const SparseNonnegMatrix& a, bool covering,
                         std::size_t max_variables) {
  const std::size_t d = a.cols();
  const std::size_t k = a.rows();
  if (d > max_variables) {
    throw Error(ErrorKind::SizeLimit,
                "vertex enumeration limited to " + std::to_string(max_variables) +
                    " variables");
  }
  const auto rows = dense(a);
  constexpr double tol = 1e-9;

  OracleSolution best;
  best.status = OracleStatus::Infeasible;
  bool found = false;

  // Constraint c < k is row c tight; c >= k is z[c - k] = 0.
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t slot,
                                                             std::size_t from) {
    if (slot == d) {
      std::vector<std::vector<double>> g(d, std::vector<double>(d, 0.0));
      std::vector<double> h(d, 0.0);
      for (std::size_t s = 0; s < d; ++s) {
        if (pick[s] < k) {
          g[s] = rows[pick[s]];
          h[s] = 1.0;
        } else {
          g[s][pick[s] - k] = 1.0;
        }
      }
      std::vector<double> z;
      if (!solve_square(g, h, z)) return;
      for (double v : z) {
        if (v < -tol) return;
      }
      for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) s += rows[j][c] * z[c];
        if (covering ? s < 1.0 - tol : s > 1.0 + tol) return;
      }
      for (double& v : z) v = std::max(0.0, v);
      double value = 0.0;
      for (double v : z) value += v;
      if (!found || (covering ? value < best.opt_value : value > best.opt_value)) {
        found = true;
        best.opt_value = value;
        best.x_opt = z;
        best.status = OracleStatus::Optimal;
      }
      ++best.pivots;
      return;
    }
    for (std::size_t c = from; c + (d - slot) <= k + d; ++c) {
      pick[slot] = c;
      choose(slot + 1, c + 1);
    }
  };
  choose(0, 0);
  return best;
}

}  // namespace

OracleSolution simplex_packing(const PackingInstance& instance) {
  const auto& a = instance.matrix;
  const std::size_t m = a.rows(), n = a.cols();
  check_size(m, n);

  // Columns: x (n) then slacks (m).
  Tableau tab(m, n + m);
  for (const auto& e : a.entries()) tab.at(e.row, e.col) = e.value;
  for (std::size_t j = 0; j < m; ++j) {
    tab.at(j, n + j) = 1.0;
    tab.rhs(j) = 1.0;
    tab.basis()[j] = n + j;
  }
  std::vector<double> cost(n + m, 0.0);
  std::fill(cost.begin(), cost.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
  tab.set_objective(cost);

  OracleSolution out;
  const bool bounded = tab.optimize(std::vector<bool>(n + m, true), pivot_limit(m, n));
  out.pivots = tab.pivots();
  if (!bounded) {
    out.status = OracleStatus::Unbounded;
    out.opt_value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.x_opt = tab.solution(n);
  out.opt_value = 0.0;
  for (double v : out.x_opt) out.opt_value += v;
  return out;
}

OracleSolution simplex_covering(const CoveringInstance& instance) {
  const auto& c = instance.constraints;
  const std::size_t rows = c.rows(), vars = c.cols();
  check_size(rows, vars);

  // Columns: y (vars), surplus (rows), artificial (rows).
  const std::size_t cols = vars + 2 * rows;
  Tableau tab(rows, cols);
  for (const auto& e : c.entries()) tab.at(e.row, e.col) = e.value;
  for (std::size_t j = 0; j < rows; ++j) {
    tab.at(j, vars + j) = -1.0;
    tab.at(j, vars + rows + j) = 1.0;
    tab.rhs(j) = 1.0;
    tab.basis()[j] = vars + rows + j;
  }
  const double limit = pivot_limit(rows, vars + rows);

  std::vector<double> phase1(cols, 0.0);
  std::fill(phase1.begin() + static_cast<std::ptrdiff_t>(vars + rows), phase1.end(), -1.0);
  tab.set_objective(phase1);
  tab.optimize(std::vector<bool>(cols, true), limit);

  OracleSolution out;
  if (tab.value() < -1e-9) {
    out.status = OracleStatus::Infeasible;
    out.pivots = tab.pivots();
    out.opt_value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t i = 0; i < rows; ++i) {
    if (tab.basis()[i] < vars + rows) continue;
    for (std::size_t j = 0; j < vars + rows; ++j) {
      if (std::fabs(tab.at(i, j)) > kPivotTolerance) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  std::vector<double> phase2(cols, 0.0);
  std::fill(phase2.begin(), phase2.begin() + static_cast<std::ptrdiff_t>(vars), -1.0);
  tab.set_objective(phase2);
  std::vector<bool> allowed(cols, false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(vars + rows), true);
  const bool bounded = tab.optimize(allowed, limit);
  out.pivots = tab.pivots();
  if (!bounded) {
    // Unreachable for a non-negative objective; kept for completeness.
    out.status = OracleStatus::Unbounded;
    out.opt_value = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.x_opt = tab.solution(vars);
  out.opt_value = 0.0;
  for (double v : out.x_opt) out.opt_value += v;
  return out;
}

OracleSolution enumerate_vertices(const PackingInstance& instance,
                                  std::size_t max_variables) {
  return enumerate(instance.matrix, false, max_variables);
}

OracleSolution enumerate_vertices(const CoveringInstance& instance,
                                  std::size_t max_variables) {
  return enumerate(instance.constraints, true, max_variables);
}

Feasibility check_feasible(std::span<const double> x,
                           const SparseNonnegMatrix& matrix, Sense sense,
                           double tol) {
  std::vector<double> ax(matrix.rows());
  matrix.multiply(x, ax);
  Feasibility out;
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (double v : ax) {
    out.max_violation = std::max(out.max_violation,
                                 sense == Sense::Pack ? v - 1.0 : 1.0 - v);
  }
  const bool nonneg = std::all_of(x.begin(), x.end(), [&](double v) { return v >= -tol; });
  out.feasible = nonneg && out.max_violation <= tol;
  return out;
}

Feasibility check_feasible(std::span<const double> x,
                           const PackingInstance& instance, double tol) {
  return check_feasible(x, instance.matrix, Sense::Pack, tol);
}

Feasibility check_feasible(std::span<const double> y,
                           const CoveringInstance& instance, double tol) {
  return check_feasible(y, instance.constraints, Sense::Cover, tol);
}

}  // namespace poslp
