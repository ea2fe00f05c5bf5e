#include "poslp/smoothing.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "poslp/error.hpp"

namespace poslp {

namespace {

constexpr std::size_t kRowChunk = 512;

[[noreturn]] void overflow(std::size_t row, double activity) {
  throw Error(ErrorKind::NumericalOverflow,
              "penalty exponent overflow in row " + std::to_string(row + 1) +
                  " (activity " + std::to_string(activity) + ")");
}

}  // namespace

int bucket_count(double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / epsilon))));
}

SolverParams derive_params(std::size_t n, std::size_t m, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw Error(ErrorKind::EpsilonOutOfRange,
                "epsilon must lie in (0, 1/2], got " + std::to_string(epsilon));
  }
  if (n == 0 || m == 0) {
    throw Error(ErrorKind::DimensionMismatch, "derive_params: n, m >= 1");
  }
  SolverParams p;
  p.epsilon = epsilon;
  p.n = n;
  p.m = m;
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  p.mu = epsilon / (4.0 * std::log(nm / epsilon));
  p.alpha = p.mu / 20.0;
  p.w = bucket_count(epsilon);
  const double t = 10.0 * p.w * std::log(2.0 * static_cast<double>(n)) /
                   (p.alpha * epsilon);
  p.T = static_cast<std::uint64_t>(std::ceil(t));
  return p;
}

SmoothedObjective::SmoothedObjective(const PackingInstance& instance, double mu,
                                     Executor* executor)
    : instance_(&instance), mu_(mu), inv_mu_(1.0 / mu), executor_(executor) {}

bool SmoothedObjective::parallel() const noexcept {
  return executor_ != nullptr && executor_->threads() > 1 &&
         instance_->matrix.nnz() >= kParallelNnz;
}

void SmoothedObjective::activity_gather(std::span<const double> x,
                                        Evaluation& out, std::size_t begin,
                                        std::size_t end) const {
  const auto& a = instance_->matrix;
  const std::size_t* ptr = a.row_offsets().data();
  const Index* idx = a.row_indices().data();
  const double* val = a.row_values().data();
  for (std::size_t j = begin; j < end; ++j) {
    double s = 0.0;
    for (std::size_t k = ptr[j], e = ptr[j + 1]; k < e; ++k) s += val[k] * x[idx[k]];
    out.activity[j] = s;
  }
}

void SmoothedObjective::penalties_pass(Evaluation& out, std::size_t begin,
                                       std::size_t end,
                                       const std::vector<double>* previous) const {
  for (std::size_t j = begin; j < end; ++j) {
    if (previous != nullptr && (*previous)[j] == out.activity[j]) continue;
    const double exponent = (out.activity[j] - 1.0) * inv_mu_;
    // Overflow is reported afterwards; keep this loop branch-light.
    out.penalty[j] = exponent > kMaxPenaltyExponent ? HUGE_VAL : std::exp(exponent);
  }
}

void SmoothedObjective::gradient_gather(Evaluation& out, std::size_t begin,
                                        std::size_t end) const {
  const auto& a = instance_->matrix;
  const std::size_t* ptr = a.col_offsets().data();
  const Index* idx = a.col_indices().data();
  const double* val = a.col_values().data();
  const double* p = out.penalty.data();
  for (std::size_t i = begin; i < end; ++i) {
    double s = 0.0;
    for (std::size_t k = ptr[i], e = ptr[i + 1]; k < e; ++k) s += val[k] * p[idx[k]];
    out.gradient[i] = s - 1.0;
  }
}

void SmoothedObjective::run(std::span<const double> x, Evaluation& out,
                            bool reuse) const {
  const auto& a = instance_->matrix;
  const std::size_t m = a.rows(), n = a.cols();
  if (x.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "evaluate: x has wrong size");
  }
  reuse = reuse && out.activity.size() == m && out.penalty.size() == m &&
          out.gradient.size() == n;
  if (reuse) {
    previous_activity_.swap(out.activity);
  }
  out.activity.resize(m);
  out.penalty.resize(m);
  out.gradient.resize(n);
  const std::vector<double>* previous = reuse ? &previous_activity_ : nullptr;

  const bool par = parallel();
  if (par) {
    executor_->for_chunks(m, kRowChunk, [&](std::size_t b, std::size_t e) {
      activity_gather(x, out, b, e);
      penalties_pass(out, b, e, previous);
    });
  } else {
    activity_gather(x, out, 0, m);
    penalties_pass(out, 0, m, previous);
  }

  double max_activity = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (out.penalty[j] == HUGE_VAL) overflow(j, out.activity[j]);
    max_activity = std::max(max_activity, out.activity[j]);
  }
  out.max_activity = max_activity;

  if (par) {
    executor_->for_chunks(n, kRowChunk, [&](std::size_t b, std::size_t e) {
      gradient_gather(out, b, e);
    });
  } else {
    gradient_gather(out, 0, n);
  }
#ifndef NDEBUG
  for (double g : out.gradient) assert(g >= -1.0);
#endif

  Executor* reducer = par ? executor_ : nullptr;
  out.sum_x = ordered_sum(x, reducer);
  out.sum_penalty = ordered_sum(out.penalty, reducer);
  out.value = -out.sum_x + mu_ * out.sum_penalty;
}

void SmoothedObjective::evaluate(std::span<const double> x,
                                 Evaluation& out) const {
  run(x, out, false);
}

void SmoothedObjective::update(std::span<const double> x, Evaluation& out) const {
  run(x, out, true);
}

Evaluation SmoothedObjective::evaluate(std::span<const double> x) const {
  Evaluation out;
  evaluate(x, out);
  return out;
}

std::vector<double> penalties(const PackingInstance& instance,
                              std::span<const double> x, double mu) {
  return SmoothedObjective(instance, mu).evaluate(x).penalty;
}

double objective(const PackingInstance& instance, std::span<const double> x,
                 double mu) {
  return SmoothedObjective(instance, mu).evaluate(x).value;
}

GradientResult gradient(const PackingInstance& instance,
                        std::span<const double> x, double mu) {
  auto e = SmoothedObjective(instance, mu).evaluate(x);
  return {std::move(e.gradient), std::move(e.penalty)};
}

std::vector<double> initial_point(const PackingInstance& instance,
                                  double epsilon) {
  const std::size_t n = instance.n();
  std::vector<double> x(n);
  const double numer = 1.0 - epsilon / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = numer / (static_cast<double>(n) * instance.matrix.column_max(i));
  }
  return x;
}

}  // namespace poslp
