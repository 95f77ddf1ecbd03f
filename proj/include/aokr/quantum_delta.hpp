#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aokr/ensemble.hpp"
#include "aokr/errors.hpp"
#include "aokr/fft.hpp"
#include "aokr/numerics.hpp"
#include "aokr/parallel.hpp"
#include "aokr/params.hpp"
#include "aokr/quantum_state.hpp"

namespace aokr {

// Ladder margin beyond the classical kick reach; J_m(k) decays
// super-exponentially for m > k, so 32 extra sites put the boundary
// amplitude far below the tail tolerance.
inline constexpr int kLadderMargin = 32;
inline constexpr double kTailTolerance = 1e-10;  // on |c_min|^2 + |c_max|^2
inline constexpr std::size_t kMaxLadderSpan = std::size_t{1} << 21;

// Default initial ladder half-width for an n_kicks evolution.
inline int default_ladder_halfwidth(int n_kicks, double kick_ratio) {
  const double reach = std::max(1.0, std::ceil(std::max(n_kicks, 1) * kick_ratio));
  return static_cast<int>(reach) + kLadderMargin;
}

namespace detail {

// Phase-grid factors e^{+i k cos(2 pi j / N)}, cached per grid size for the
// most recent k (sweeps reuse one k across all trajectories of a point).
inline const std::vector<std::complex<double>>& kick_phase_table(std::size_t n, double k) {
  thread_local std::unordered_map<std::size_t, std::pair<double, std::vector<std::complex<double>>>>
      cache;
  auto& entry = cache[n];
  if (entry.second.size() != n || entry.first != k) {
    entry.first = k;
    entry.second.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = k * std::cos(2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
      entry.second[j] = {std::cos(ang), std::sin(ang)};
    }
  }
  return entry.second;
}

inline std::size_t slot_of(std::int64_t n, std::size_t grid) {
  const std::int64_t g = static_cast<std::int64_t>(grid);
  return static_cast<std::size_t>(((n % g) + g) % g);
}

}  // namespace detail

// One delta kick, the unitary exp(+i k cos(phi_hat)) with k = kappa/kbar.
// Contract: Bessel convolution c'_{n} = sum_m i^m J_m(k) c_{n-m}
// (Jacobi-Anger); implemented as a spectral transform on a power-of-two
// phase grid at least twice the ladder span. The ladder is extended so that
// the boundary-site invariant |c_min|^2 + |c_max|^2 < 1e-10 holds, doubling
// the extension until it does.
inline QuantumState apply_kick(QuantumState state, double kick_ratio) {
  if (!(kick_ratio >= 0.0)) {
    throw invalid_parameter("apply_kick: kick_ratio must be non-negative, got " +
                            std::to_string(kick_ratio));
  }
  if (kick_ratio == 0.0) return state;

  int reach = static_cast<int>(std::ceil(kick_ratio)) + kLadderMargin;
  for (;;) {
    const std::int64_t lo = state.n_min - reach;
    const std::int64_t hi = state.n_max() + reach;
    const std::size_t span = static_cast<std::size_t>(hi - lo + 1);
    if (span > kMaxLadderSpan) {
      throw truncation_error("apply_kick: ladder span " + std::to_string(span) +
                             " exceeds the hard cap without meeting the tail tolerance");
    }
    const std::size_t grid = next_pow2(2 * span);

    thread_local std::vector<std::complex<double>> slots;
    slots.assign(grid, {0.0, 0.0});
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
      slots[detail::slot_of(state.n_min + static_cast<std::int64_t>(i), grid)] =
          state.amplitudes[i];
    }

    fft_pow2(slots, +1);  // momentum ladder -> phase grid
    const auto& phase = detail::kick_phase_table(grid, kick_ratio);
    for (std::size_t j = 0; j < grid; ++j) {
      const std::complex<double> a = slots[j];
      const std::complex<double> w = phase[j];
      slots[j] = {a.real() * w.real() - a.imag() * w.imag(),
                  a.real() * w.imag() + a.imag() * w.real()};
    }
    fft_pow2(slots, -1);  // back to the momentum ladder

    QuantumState out;
    out.beta = state.beta;
    out.n_min = lo;
    out.amplitudes.resize(span);
    const double inv = 1.0 / static_cast<double>(grid);
    for (std::size_t i = 0; i < span; ++i) {
      out.amplitudes[i] = slots[detail::slot_of(lo + static_cast<std::int64_t>(i), grid)] * inv;
    }

    const double tail =
        std::norm(out.amplitudes.front()) + std::norm(out.amplitudes.back());
    if (tail < kTailTolerance) return out;
    reach *= 2;
  }
}

// Energy of one plane-wave trajectory after n_kicks delta kicks (free
// evolution between kicks only; energy is measured after the final kick).
inline double delta_trajectory_energy(double p0, const RotorParams& params, int n_kicks,
                                      int ladder_halfwidth = 0) {
  if (n_kicks < 0) throw invalid_parameter("delta_trajectory_energy: n_kicks must be >= 0");
  const int hw = ladder_halfwidth > 0 ? ladder_halfwidth
                                      : default_ladder_halfwidth(n_kicks, params.kick_ratio);
  QuantumState state = init_plane_wave(p0, hw);
  for (int q = 0; q < n_kicks; ++q) {
    state = apply_kick(std::move(state), params.kick_ratio);
    if (q + 1 < n_kicks) state = apply_free(std::move(state), params.kbar);
  }
  return energy_of_state(state);
}

// Per-trajectory rms momenta sqrt(<p^2>) of the evolved states, one entry
// per sampled initial condition.
inline MomentumEnsemble evolve_delta_momenta(const EnsembleSpec& spec, const RotorParams& params,
                                             int n_kicks, unsigned workers = 1) {
  if (n_kicks < 0) throw invalid_parameter("evolve_delta_momenta: n_kicks must be >= 0");
  std::vector<double> rms(spec.n_traj);
  parallel_for_chunks(spec.n_traj, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const InitialCondition ic = sample_initial_condition(spec, i);
      rms[i] = std::sqrt(2.0 * delta_trajectory_energy(ic.p0, params, n_kicks));
    }
  });
  return {std::move(rms), Method::quantum_delta, n_kicks};
}

inline EnergyRecord simulate_delta_ensemble(const EnsembleSpec& spec, const RotorParams& params,
                                            int n_kicks, unsigned workers = 1) {
  const MomentumEnsemble ensemble = evolve_delta_momenta(spec, params, n_kicks, workers);
  const EnergyEstimate est = energy_from_momenta(ensemble);
  return {params.kbar, params.kick_ratio, spec.sigma_p, n_kicks,    Method::quantum_delta,
          est.energy,  est.std_err,       spec.n_traj,  spec.seed, ""};
}

}  // namespace aokr
