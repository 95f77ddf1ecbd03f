#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "aokr/errors.hpp"

namespace aokr {

namespace detail {

// One downward Miller pass from `start`, returning normalized J_0..J_nmax.
inline std::vector<double> miller_pass(int nmax, double x, int start) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  double norm = 0.0;   // J_0 + 2*sum of even-order J's, at the working scale
  double jp = 0.0;     // J_{m+1}
  double jc = 1e-250;  // J_m, arbitrary scale fixed by normalization
  if (start % 2 == 0) norm = 2.0 * jc;
  if (start <= nmax) out[start] = jc;
  for (int m = start; m >= 1; --m) {
    double jm = (2.0 * m / x) * jc - jp;  // J_{m-1}
    jp = jc;
    jc = jm;
    const int idx = m - 1;
    if (std::abs(jc) > 1e250) {
      constexpr double scale = 1e-250;
      jc *= scale;
      jp *= scale;
      norm *= scale;
      for (double& v : out) v *= scale;
    }
    if (idx <= nmax) out[idx] = jc;
    if (idx == 0) {
      norm += jc;
    } else if (idx % 2 == 0) {
      norm += 2.0 * jc;
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

}  // namespace detail

// J_0(x) .. J_nmax(x) by Miller's backward recurrence with a self-validating
// starting order: the start is raised until two passes agree to 1e-14
// relative, so accuracy does not rest on an a-priori heuristic.
inline std::vector<double> bessel_jn_array(int nmax, double x) {
  if (nmax < 0) throw invalid_parameter("bessel_jn_array: nmax must be >= 0");
  if (x < 0.0) {
    auto out = bessel_jn_array(nmax, -x);  // J_n(-x) = (-1)^n J_n(x)
    for (int n = 1; n <= nmax; n += 2) out[static_cast<std::size_t>(n)] = -out[n];
    return out;
  }
  if (x < 1e-10) {
    // Two-term ascending series; remainder < 1e-21 relative on this range.
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    const double q = 0.25 * x * x;
    double term = 1.0;  // (x/2)^n / n!
    for (int n = 0; n <= nmax; ++n) {
      out[static_cast<std::size_t>(n)] = term * (1.0 - q / (n + 1));
      term *= 0.5 * x / (n + 1);
    }
    return out;
  }

  int start = std::max(nmax, static_cast<int>(x)) + 18;
  start += start % 2;  // even start keeps the normalization seed simple
  std::vector<double> prev;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> cur = detail::miller_pass(nmax, x, start);
    if (!prev.empty()) {
      double max_abs = 0.0;
      for (double v : cur) max_abs = std::max(max_abs, std::abs(v));
      bool converged = true;
      for (std::size_t i = 0; i <= static_cast<std::size_t>(nmax); ++i) {
        // Relative agreement, with an envelope-scaled absolute floor so
        // accidental near-zeros of J_n cannot stall termination.
        const double tol = std::max(1e-13 * std::abs(cur[i]), 1e-15 * max_abs);
        if (std::abs(cur[i] - prev[i]) > tol) {
          converged = false;
          break;
        }
      }
      if (converged) return cur;
    }
    prev = std::move(cur);
    start += 16 + start / 4;
  }
  throw numerical_error("bessel_jn_array: Miller recurrence did not converge for x = " +
                        std::to_string(x));
}

inline double bessel_j0(double x) { return bessel_jn_array(0, x)[0]; }
inline double bessel_j1(double x) { return bessel_jn_array(1, x)[1]; }
inline double bessel_j2(double x) { return bessel_jn_array(2, x)[2]; }

}  // namespace aokr
