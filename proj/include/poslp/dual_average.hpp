#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace poslp {

/// Running sum of per-iteration penalty vectors p(x_k).
struct DualAverage {
  std::vector<double> sum_p;
  std::uint64_t count = 0;

  void add(std::span<const double> p) {
    if (sum_p.empty()) sum_p.assign(p.size(), 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) sum_p[j] += p[j];
    ++count;
  }
};

}  // namespace poslp
