#include "reference.hpp"

#include <algorithm>
#include <cmath>

namespace ref {

Dense to_dense(const poslp::SparseNonnegMatrix& a) {
  Dense d(a.rows(), std::vector<long double>(a.cols(), 0.0L));
  for (const auto& e : a.entries()) d[e.row][e.col] = e.value;
  return d;
}

std::vector<long double> activity(const Dense& a, std::span<const double> x) {
  std::vector<long double> out(a.size(), 0.0L);
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) out[j] += a[j][i] * x[i];
  return out;
}

std::vector<long double> penalties(const Dense& a, std::span<const double> x,
                                   long double mu) {
  auto p = activity(a, x);
  for (auto& v : p) v = std::exp((v - 1.0L) / mu);
  return p;
}

long double objective(const Dense& a, std::span<const double> x, long double mu) {
  long double f = 0.0L;
  for (double v : x) f -= v;
  for (long double p : penalties(a, x, mu)) f += mu * p;
  return f;
}

std::vector<long double> gradient(const Dense& a, std::span<const double> x,
                                  long double mu) {
  const auto p = penalties(a, x, mu);
  std::vector<long double> g(x.size(), -1.0L);
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) g[i] += a[j][i] * p[j];
  return g;
}

Params params(std::size_t n, std::size_t m, long double eps) {
  Params r;
  const long double nn = n, mm = m;
  r.mu = eps / (4.0L * std::log(nn * mm / eps));
  r.alpha = r.mu / 20.0L;
  int w = 0;
  while (std::ldexp(1.0L, w) * eps < 1.0L) ++w;  // smallest w with 2^w >= 1/eps
  r.w = std::max(w, 1);
  const long double lw = r.w;
  r.T = static_cast<std::uint64_t>(
      std::ceil(10.0L * lw * std::log(2.0L * nn) / (r.alpha * eps)));
  const auto a = static_cast<std::uint64_t>(
      std::ceil(6.0L * lw * std::log(2.0L * nn) / (r.alpha * eps)));
  const auto b = static_cast<std::uint64_t>(
      std::ceil(2.0L * lw * lw * std::log(nn / eps) / (eps * eps)));
  r.T_cov = std::max(a, b);
  return r;
}

std::optional<int> scan_bucket(double xi, double eps, int w) {
  if (xi == 0.0) return std::nullopt;
  const double mag = std::fabs(xi);
  for (int t = 0; t < w; ++t) {
    const double lo = std::ldexp(eps, t), hi = std::ldexp(eps, t + 1);
    if (mag > lo && mag <= hi) return t;
  }
  return w - 1;
}

long double pack_violation(const Dense& a, std::span<const double> x) {
  long double worst = -INFINITY;
  for (long double v : activity(a, x)) worst = std::max(worst, v - 1.0L);
  return worst;
}

long double cover_violation(const Dense& c, std::span<const double> y) {
  long double worst = -INFINITY;
  for (long double v : activity(c, y)) worst = std::max(worst, 1.0L - v);
  return worst;
}

namespace {

poslp::SparseNonnegMatrix draw(std::size_t rows, std::size_t cols,
                               double density, std::mt19937_64& rng,
                               bool full_rows) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto value = [&] {
    const double v = u(rng);
    return v == 0.0 ? 1.0 : v;
  };
  std::vector<std::vector<double>> d(rows, std::vector<double>(cols, 0.0));
  for (auto& row : d)
    for (auto& v : row)
      if (u(rng) < density) v = value();
  // Empty lines get one entry at a random position.
  std::uniform_int_distribution<std::size_t> pick_row(0, rows - 1), pick_col(0, cols - 1);
  for (std::size_t i = 0; i < cols; ++i) {
    bool hit = false;
    for (std::size_t j = 0; j < rows; ++j) hit = hit || d[j][i] != 0.0;
    if (!hit) d[pick_row(rng)][i] = value();
  }
  if (full_rows) {
    for (auto& row : d) {
      bool hit = false;
      for (double v : row) hit = hit || v != 0.0;
      if (!hit) row[pick_col(rng)] = value();
    }
  }
  std::vector<poslp::Entry> entries;
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t i = 0; i < cols; ++i)
      if (d[j][i] != 0.0) entries.push_back({j, i, d[j][i]});
  return poslp::SparseNonnegMatrix(rows, cols, std::move(entries));
}

}  // namespace

poslp::SparseNonnegMatrix random_matrix(std::size_t rows, std::size_t cols,
                                        double density, std::mt19937_64& rng) {
  return draw(rows, cols, density, rng, false);
}

poslp::SparseNonnegMatrix random_matrix_full_rows(std::size_t rows,
                                                  std::size_t cols,
                                                  double density,
                                                  std::mt19937_64& rng) {
  return draw(rows, cols, density, rng, true);
}

}  // namespace ref
