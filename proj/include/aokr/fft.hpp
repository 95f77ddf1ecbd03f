#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aokr/errors.hpp"
#include "aokr/params.hpp"

namespace aokr {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace detail {

// Twiddle factors e^{-2 pi i k / n}, k < n/2, cached per size.
// thread_local: workers never share tables, so no locking and no
// cross-thread variation in table construction order.
inline const std::vector<std::complex<double>>& fft_twiddles(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::vector<std::complex<double>>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = -2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
      tw[k] = {std::cos(ang), std::sin(ang)};
    }
    it = cache.emplace(n, std::move(tw)).first;
  }
  return it->second;
}

}  // namespace detail

// In-place iterative radix-2 DFT, no normalization:
//   sign = -1:  X_k = sum_j x_j e^{-2 pi i j k / N}
//   sign = +1:  X_k = sum_j x_j e^{+2 pi i j k / N}
// Deterministic operation order; callers divide by N where needed.
inline void fft_pow2(std::span<std::complex<double>> a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if ((n & (n - 1)) != 0) {
    throw invalid_parameter("fft_pow2: size must be a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto& tw = detail::fft_twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> w = tw[k * step];
        const double wr = w.real();
        const double wi = (sign < 0) ? w.imag() : -w.imag();
        const std::complex<double> u = a[base + k];
        const std::complex<double> v = a[base + k + half];
        const double vr = v.real() * wr - v.imag() * wi;
        const double vi = v.real() * wi + v.imag() * wr;
        a[base + k] = {u.real() + vr, u.imag() + vi};
        a[base + k + half] = {u.real() - vr, u.imag() - vi};
      }
    }
  }
}

}  // namespace aokr
