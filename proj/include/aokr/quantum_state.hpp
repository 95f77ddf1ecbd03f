#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "aokr/errors.hpp"
#include "aokr/numerics.hpp"
#include "aokr/params.hpp"

namespace aokr {

// State of one rotor on the momentum ladder: amplitudes c_n for
// n in [n_min, n_max], where ladder site n has physical momentum
// (n + beta) 2-photon recoils.
struct QuantumState {
  double beta = 0.0;        // quasimomentum in [-0.5, 0.5)
  std::int64_t n_min = 0;   // ladder index of amplitudes.front()
  std::vector<std::complex<double>> amplitudes;

  std::int64_t n_max() const {
    return n_min + static_cast<std::int64_t>(amplitudes.size()) - 1;
  }
  double momentum_at(std::size_t idx) const {
    return static_cast<double>(n_min + static_cast<std::int64_t>(idx)) + beta;
  }
};

// Plane wave at momentum p0 = n0 + beta with n0 = floor(p0 + 0.5), on a
// ladder n0 +/- ladder_halfwidth. Half-integer momenta map to beta = -0.5.
inline QuantumState init_plane_wave(double p0, int ladder_halfwidth) {
  if (ladder_halfwidth < 1) {
    throw invalid_parameter("init_plane_wave: ladder_halfwidth must be >= 1");
  }
  QuantumState s;
  s.beta = quasimomentum(p0);
  const std::int64_t n0 = static_cast<std::int64_t>(std::llround(p0 - s.beta));
  s.n_min = n0 - ladder_halfwidth;
  s.amplitudes.assign(2 * static_cast<std::size_t>(ladder_halfwidth) + 1, {0.0, 0.0});
  s.amplitudes[static_cast<std::size_t>(ladder_halfwidth)] = {1.0, 0.0};
  return s;
}

inline double norm_squared(const QuantumState& s) {
  std::vector<double> probs(s.amplitudes.size());
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    probs[i] = std::norm(s.amplitudes[i]);
  }
  return pairwise_sum(probs);
}

// E = sum |c_n|^2 (n + beta)^2 / 2 in 2-photon recoil energy units.
inline double energy_of_state(const QuantumState& s) {
  std::vector<double> terms(s.amplitudes.size());
  std::vector<double> probs(s.amplitudes.size());
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    const double p = s.momentum_at(i);
    const double w = std::norm(s.amplitudes[i]);
    probs[i] = w;
    terms[i] = 0.5 * w * p * p;
  }
  const double norm = pairwise_sum(probs);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw invalid_parameter("energy_of_state: state norm deviates from 1 by " +
                            std::to_string(std::abs(norm - 1.0)));
  }
  return pairwise_sum(terms);
}

// Free evolution over one scaled period: phases exp(-i kbar (n+beta)^2 / 2).
inline QuantumState apply_free(QuantumState s, double kbar) {
  if (!(kbar > 0.0)) {
    throw invalid_parameter("apply_free: kbar must be positive, got " + std::to_string(kbar));
  }
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    const double p = s.momentum_at(i);
    const double phase = -0.5 * kbar * p * p;
    const std::complex<double> rot{std::cos(phase), std::sin(phase)};
    s.amplitudes[i] *= rot;
  }
  return s;
}

}  // namespace aokr
