#include "poslp/dbscd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poslp/error.hpp"
#include "poslp/log.hpp"

namespace poslp {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Upper interval ends eps 2^(t+1) for t < w-1; the last bucket is open
/// above. Multiplying by a power of two is exact, so boundaries are exact.
class BucketBounds {
 public:
  BucketBounds(double epsilon, int w) : epsilon_(epsilon), w_(w) {
    for (int t = 0; t + 1 < w; ++t) upper_.push_back(std::ldexp(epsilon, t + 1));
  }

  /// Bucket of a gradient value, kNoBucket for the small component.
  int classify(double g) const noexcept {
    const double a = std::min(std::fabs(g), 1.0);
    if (a <= epsilon_) return kNoBucket;
    int t = 0;
    while (t + 1 < w_ && a > upper_[t]) ++t;
    return t;
  }

 private:
  double epsilon_;
  int w_;
  std::vector<double> upper_;
};

}  // namespace

std::optional<int> bucket_index(double xi, double epsilon, int w) {
  const double a = std::fabs(xi);
  if (a == 0.0) return std::nullopt;
  if (a <= epsilon || !std::isfinite(a)) {
    throw Error(ErrorKind::OutOfDomain,
                "bucket_index: |xi| = " + std::to_string(a) +
                    " is not in (eps, 1]");
  }
  int t = static_cast<int>(std::ceil(std::log2(a / epsilon))) - 1;
  t = std::clamp(t, 0, w - 1);
  // The quotient a / eps may be rounded; settle against exact boundaries.
  while (t > 0 && a <= std::ldexp(epsilon, t)) --t;
  while (t < w - 1 && a > std::ldexp(epsilon, t + 1)) ++t;
  return t;
}

TruncatedGradient truncate(std::span<const double> grad, double epsilon) {
  const int w = bucket_count(epsilon);
  const std::size_t n = grad.size();
  TruncatedGradient out;
  out.zeta.assign(n, 0.0);
  out.xi.assign(n, 0.0);
  out.eta.assign(n, 0.0);
  out.bucket.assign(n, kNoBucket);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grad[i];
    if (g < -1.0) {
      throw Error(ErrorKind::GradientBelowMinusOne,
                  "gradient of coordinate " + std::to_string(i) + " is " +
                      std::to_string(g));
    }
    if (std::fabs(g) <= epsilon) {
      out.zeta[i] = g;
      continue;
    }
    if (g > 1.0) {
      out.xi[i] = 1.0;
      out.eta[i] = g - 1.0;
    } else {
      out.xi[i] = g;
    }
    out.bucket[i] = *bucket_index(out.xi[i], epsilon, w);
  }
  return out;
}

std::vector<double> step(std::span<const double> x,
                         const TruncatedGradient& trunc, int t, double alpha) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (trunc.bucket[i] == t) out[i] *= std::exp(-alpha * trunc.xi[i]);
  }
  return out;
}

int draw_bucket(std::uint64_t seed, std::uint64_t k, int w) noexcept {
  const std::uint64_t r = splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15ULL);
  return static_cast<int>(((r >> 32) * static_cast<std::uint64_t>(w)) >> 32);
}

PackingReport solve_packing(const PackingInstance& instance, double epsilon,
                            std::uint64_t seed, const SolveOptions& options) {
  const auto params = derive_params(instance.n(), instance.m(), epsilon);
  const std::uint64_t budget = options.iteration_override.value_or(params.T);
  const std::size_t n = instance.n();
  const std::size_t nnz = instance.matrix.nnz();
  const int w = params.w;

  Executor executor(options.threads);
  const SmoothedObjective smoothed(instance, params.mu, &executor);
  const BucketBounds bounds(epsilon, w);

  PackingReport report;
  report.params = params;
  report.seed = seed;
  if (options.accumulate_gradients) report.gradient_sum.assign(n, 0.0);

  std::vector<double> x = initial_point(instance, epsilon);
  Evaluation ev;
  std::vector<int> bucket(n, kNoBucket);
  std::vector<std::size_t> bucket_size(static_cast<std::size_t>(w), 0);

  auto stats = RunStatistics{};
  auto refresh = [&] {
    if (stats.evaluations == 0) {
      smoothed.evaluate(x, ev);
    } else {
      smoothed.update(x, ev);
    }
    ++stats.evaluations;
    std::fill(bucket_size.begin(), bucket_size.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      bucket[i] = bounds.classify(ev.gradient[i]);
      if (bucket[i] != kNoBucket) ++bucket_size[static_cast<std::size_t>(bucket[i])];
    }
    stats.max_row_activity = std::max(stats.max_row_activity, ev.max_activity);
  };
  auto check_monotone = [&](double before, double after, std::uint64_t k) {
    const double increase = after - before;
    stats.max_f_increase = std::max(stats.max_f_increase, increase);
    if (increase > kMonotonicityTolerance) {
      ++stats.monotonicity_violations;
      const std::string msg = "f_mu increased by " + std::to_string(increase) +
                              " at iteration " + std::to_string(k);
      if (options.strict) throw Error(ErrorKind::MonotonicityViolation, msg);
      warn(msg);
    }
  };

  refresh();
  std::uint64_t k = 0;
  for (; k < budget; ++k) {
    const double f_k = ev.value;
    if (options.stop_below && f_k <= *options.stop_below) {
      stats.target_iteration = k;
      break;
    }
    if (options.accumulate_penalties) report.penalties.add(ev.penalty);
    if (options.accumulate_gradients) {
      for (std::size_t i = 0; i < n; ++i) report.gradient_sum[i] += ev.gradient[i];
    }

    const int t = draw_bucket(seed, k, w);
    const std::size_t updated = bucket_size[static_cast<std::size_t>(t)];
    if (options.observer) {
      options.observer(IterationState{k, t, x, &ev, bucket, &params});
    }
    if (options.trace_stride != 0 && k % options.trace_stride == 0) {
      report.trace.push_back({k, t, f_k, ev.max_activity, updated, nnz});
    }

    // An empty bucket leaves x, and hence every derived quantity, unchanged.
    if (updated == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (bucket[i] == t) {
        x[i] *= std::exp(-params.alpha * std::min(ev.gradient[i], 1.0));
      }
    }
    refresh();
    check_monotone(f_k, ev.value, k);
  }
  if (options.stop_below && !stats.target_iteration && ev.value <= *options.stop_below) {
    stats.target_iteration = k;
  }
  stats.iterations = k;

  report.stats = stats;
  report.work = k * nnz;
  report.f_mu_final = ev.value;
  report.x_raw = x;
  for (double& v : x) v /= 1.0 + epsilon;
  report.x_final = unscale_packing_solution(x, instance.column_scale);
  report.objective = ordered_sum(report.x_final);
  if (report.penalties.count > 0) {
    report.penalty_average = report.penalties.sum_p;
    for (double& v : report.penalty_average) {
      v /= static_cast<double>(report.penalties.count);
    }
  }
  return report;
}

LipschitzReport sample_lipschitz_check(const PackingInstance& instance,
                                       std::span<const double> x,
                                       const TruncatedGradient& trunc, int t,
                                       const SolverParams& params,
                                       std::span<const double> taus,
                                       double slack) {
  const SmoothedObjective smoothed(instance, params.mu);
  const auto at_x = smoothed.evaluate(x);
  const auto next = step(x, trunc, t, params.alpha);

  LipschitzReport report;
  std::vector<double> point(x.size());
  for (double tau : taus) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      point[i] = tau * x[i] + (1.0 - tau) * next[i];
    }
    const auto at_point = smoothed.evaluate(point);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (trunc.bucket[i] != t) continue;
      LipschitzSample s;
      s.coordinate = i;
      s.tau = tau;
      s.ratio = at_point.gradient[i] / at_x.gradient[i];
      s.within = s.ratio >= 0.5 - slack && s.ratio <= 1.5 + slack;
      if (!s.within) ++report.violations;
      report.samples.push_back(s);
    }
  }
  return report;
}

}  // namespace poslp
