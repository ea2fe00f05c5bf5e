#include "poslp/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "poslp/error.hpp"

namespace poslp {

std::uint64_t covering_iterations(const SolverParams& params, std::size_t n) {
  const double eps = params.epsilon;
  const double w = params.w;
  const double dn = static_cast<double>(n);
  const double descent = std::ceil(6.0 * w * std::log(2.0 * dn) / (params.alpha * eps));
  const double martingale = std::ceil(2.0 * w * w * std::log(dn / eps) / (eps * eps));
  return static_cast<std::uint64_t>(std::max(descent, martingale));
}

std::vector<double> average(const DualAverage& acc) {
  if (acc.count == 0) {
    throw Error(ErrorKind::EmptyAccumulator, "no penalty vectors accumulated");
  }
  std::vector<double> out = acc.sum_p;
  for (double& v : out) v /= static_cast<double>(acc.count);
  return out;
}

DualFix fix_dual(std::span<const double> y_bar, const PackingInstance& packing,
                 double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) {
    throw Error(ErrorKind::EpsilonOutOfRange,
                "fix_dual requires epsilon in (0, 1/10], got " +
                    std::to_string(epsilon));
  }
  const auto& a = packing.matrix;
  if (y_bar.size() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "fix_dual: y_bar has wrong size");
  }
  std::vector<double> coverage(a.cols());
  a.transpose_multiply(y_bar, coverage);

  DualFix out;
  out.y.assign(y_bar.begin(), y_bar.end());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    const double lambda = coverage[i] - 1.0 + epsilon;
    if (lambda > -2.0 * epsilon) continue;
    const std::size_t j = a.column_argmax(i);
    out.y[j] += -lambda / a.column_max(i);
    ++out.num_fixed;
  }

  a.transpose_multiply(out.y, coverage);
  out.slack_min = std::numeric_limits<double>::infinity();
  for (double c : coverage) out.slack_min = std::min(out.slack_min, c - 1.0);

  for (double& v : out.y) v /= 1.0 - 3.0 * epsilon;
  return out;
}

CoveringReport solve_covering(const CoveringInstance& covering, double epsilon,
                              std::uint64_t seed, SolveOptions options) {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) {
    throw Error(ErrorKind::EpsilonOutOfRange,
                "covering requires epsilon in (0, 1/10], got " +
                    std::to_string(epsilon));
  }
  const auto packing = dualize(covering);
  const auto params = derive_params(packing.n(), packing.m(), epsilon);

  CoveringReport report;
  report.T_cov = covering_iterations(params, packing.n());
  if (!options.iteration_override) options.iteration_override = report.T_cov;
  options.accumulate_penalties = true;
  options.stop_below.reset();

  report.packing_report = solve_packing(packing, epsilon, seed, options);
  const auto y_bar = average(report.packing_report.penalties);
  auto fixed = fix_dual(y_bar, packing, epsilon);
  report.num_fixed = fixed.num_fixed;
  report.slack_min = fixed.slack_min;
  report.y_final = unscale_packing_solution(fixed.y, packing.column_scale);
  report.objective = ordered_sum(report.y_final);
  return report;
}

}  // namespace poslp
