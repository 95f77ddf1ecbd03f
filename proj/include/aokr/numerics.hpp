#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace aokr {

// Pairwise (cascade) summation: O(log n) error growth and a fixed
// association order, so results are independent of how the values were
// produced (e.g. by how many worker threads).
inline double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanStderr {
  double mean;
  double std_err;  // standard error of the mean (sample std dev / sqrt(n))
};

inline MeanStderr mean_and_stderr(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return {0.0, 0.0};
  const double mean = pairwise_sum(values) / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  {
    // Two-pass variance with pairwise accumulation of squared deviations.
    // Small fixed-size scratch blocks keep this allocation-free.
    constexpr std::size_t kBlock = 4096;
    double partials[kBlock];
    std::size_t i = 0;
    double acc = 0.0;
    while (i < n) {
      const std::size_t m = std::min(kBlock, n - i);
      for (std::size_t j = 0; j < m; ++j) {
        const double d = values[i + j] - mean;
        partials[j] = d * d;
      }
      acc += pairwise_sum(std::span<const double>(partials, m));
      i += m;
    }
    ss = acc;
  }
  const double var = ss / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace aokr
