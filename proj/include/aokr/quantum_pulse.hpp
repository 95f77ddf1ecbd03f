#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aokr/ensemble.hpp"
#include "aokr/errors.hpp"
#include "aokr/fft.hpp"
#include "aokr/parallel.hpp"
#include "aokr/params.hpp"
#include "aokr/quantum_delta.hpp"
#include "aokr/quantum_state.hpp"

namespace aokr {

// The rectangular pulse does not fit inside one kick period.
class pulse_schedule_error : public invalid_parameter {
 public:
  using invalid_parameter::invalid_parameter;
};

// How one kicking pulse is resolved in scaled time.
//   alpha      pulse fraction tau_p / T, in (0, 1]
//   n_sub      Strang substeps across the pulse
//   amplitude  potential strength kappa / alpha during the pulse
struct PulseSchedule {
  double alpha;
  int n_sub;
  double amplitude;

  PulseSchedule(double alpha_, int n_sub_, double amplitude_)
      : alpha(alpha_), n_sub(n_sub_), amplitude(amplitude_) {
    if (!(alpha > 0.0)) {
      throw invalid_parameter("PulseSchedule: alpha must be positive, got " +
                              std::to_string(alpha));
    }
    if (alpha > 1.0) {
      throw pulse_schedule_error("pulse_longer_than_period: alpha = " + std::to_string(alpha));
    }
    if (n_sub < 1) throw invalid_parameter("PulseSchedule: n_sub must be >= 1");
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
      throw invalid_parameter("PulseSchedule: amplitude must be finite and non-negative");
    }
  }

  // Pulse area in scaled units; equals kappa by construction.
  double area() const { return amplitude * alpha; }
};

// Builds the schedule for params.pulse_width at params.kbar and checks the
// pulse-area invariant amplitude * alpha = kappa to 1e-12.
inline PulseSchedule make_pulse_schedule(const RotorParams& params, int n_sub) {
  if (!params.pulse_width) {
    throw invalid_parameter("make_pulse_schedule: params.pulse_width is not set");
  }
  const double alpha = pulse_fraction(params.kbar, *params.pulse_width);
  if (!(alpha > 0.0)) {
    throw invalid_parameter("make_pulse_schedule: pulse_width must be positive for the "
                            "pulse model; use the delta-kick module for zero width");
  }
  if (alpha > 1.0) {
    throw pulse_schedule_error("pulse_longer_than_period: alpha = " + std::to_string(alpha) +
                               " at kbar = " + std::to_string(params.kbar));
  }
  PulseSchedule schedule(alpha, n_sub, params.kappa() / alpha);
  const double kappa = params.kappa();
  if (std::abs(schedule.area() - kappa) > 1e-12 * std::max(1.0, kappa)) {
    throw numerical_error("make_pulse_schedule: pulse-area invariant violated");
  }
  return schedule;
}

// Fraction of one standing-wave period traversed during a pulse by an atom
// moving at p_rms: (kbar * p_rms * alpha) / (2 pi).
inline double traversal_fraction(double p_rms, const RotorParams& params) {
  if (!params.pulse_width) {
    throw invalid_parameter("traversal_fraction: params.pulse_width is not set");
  }
  const double alpha = pulse_fraction(params.kbar, *params.pulse_width);
  return params.kbar * std::abs(p_rms) * alpha / (2.0 * pi);
}

namespace detail {

// cos(2 pi j / grid) per position-grid point, cached per size.
inline const std::vector<double>& cos_phi_table(std::size_t grid) {
  thread_local std::unordered_map<std::size_t, std::vector<double>> cache;
  auto it = cache.find(grid);
  if (it == cache.end()) {
    std::vector<double> t(grid);
    for (std::size_t j = 0; j < grid; ++j) {
      t[j] = std::cos(2.0 * pi * static_cast<double>(j) / static_cast<double>(grid));
    }
    it = cache.emplace(grid, std::move(t)).first;
  }
  return it->second;
}

// exp(+i angle cos(phi_j)) on the position grid, cached for the most recent
// angle per (grid, slot). The slot index keeps the full-step and half-step
// tables of one period in distinct cache entries; all trajectories of a
// sweep point then share both tables.
inline const std::vector<std::complex<double>>& potential_phase_table(std::size_t grid,
                                                                      double angle, int slot) {
  thread_local std::unordered_map<std::size_t,
                                  std::pair<double, std::vector<std::complex<double>>>>
      cache;
  auto& entry = cache[2 * grid + static_cast<std::size_t>(slot)];
  if (entry.second.size() != grid || entry.first != angle) {
    const auto& cphi = cos_phi_table(grid);
    entry.first = angle;
    entry.second.resize(grid);
    for (std::size_t j = 0; j < grid; ++j) {
      const double ang = angle * cphi[j];
      entry.second[j] = {std::cos(ang), std::sin(ang)};
    }
  }
  return entry.second;
}

// One full scaled period on an extended ladder [lo, lo+span): rectangular
// pulse on [0, alpha) by Strang splitting (half-potential, kinetic,
// half-potential telescoped across n_sub substeps), then free evolution of
// duration 1 - alpha. Returns false if truncated probability leaked past
// the ladder edges (caller retries with a larger extension).
inline bool pulse_period_on_grid(const QuantumState& state, const RotorParams& params,
                                 const PulseSchedule& schedule, std::int64_t lo,
                                 std::size_t span, QuantumState& out) {
  const std::size_t grid = next_pow2(2 * span);
  const std::int64_t g = static_cast<std::int64_t>(grid);
  const double dt = schedule.alpha / schedule.n_sub;

  // Unwrapped ladder index for each slot, centered on the state so leakage
  // in both directions picks up correct kinetic phases: representatives lie
  // in [center - grid/2, center + grid/2).
  const std::int64_t center = lo + static_cast<std::int64_t>(span) / 2;
  const std::int64_t rep_lo = center - g / 2;

  std::vector<double> nu2(grid);  // (n + beta)^2 per slot
  for (std::size_t m = 0; m < grid; ++m) {
    const std::int64_t offset = static_cast<std::int64_t>(m) - rep_lo;
    const std::int64_t n = rep_lo + ((offset % g) + g) % g;
    const double p = static_cast<double>(n) + state.beta;
    nu2[m] = p * p;
  }
  auto phase_table = [&](double angle_scale, const std::vector<double>& base) {
    std::vector<std::complex<double>> t(grid);
    for (std::size_t m = 0; m < grid; ++m) {
      const double ang = angle_scale * base[m];
      t[m] = {std::cos(ang), std::sin(ang)};
    }
    return t;
  };

  // Kinetic substep: exp(-i kbar nu^2 dt / 2); trailing free segment:
  // exp(-i kbar nu^2 (1 - alpha) / 2). Both depend on beta, so they are
  // per-trajectory; the potential tables below are shared.
  const auto kinetic = phase_table(-0.5 * params.kbar * dt, nu2);
  const auto tail_free = phase_table(-0.5 * params.kbar * (1.0 - schedule.alpha), nu2);

  // Potential phases on the position grid: exp(+i (amplitude/kbar) cos(phi) t)
  // per substep t; half-step at the pulse edges.
  const double v_rate = schedule.amplitude / params.kbar;
  const auto& v_full = potential_phase_table(grid, v_rate * dt, 0);
  const auto& v_half = potential_phase_table(grid, 0.5 * v_rate * dt, 1);

  thread_local std::vector<std::complex<double>> slots;
  slots.assign(grid, {0.0, 0.0});
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    slots[slot_of(state.n_min + static_cast<std::int64_t>(i), grid)] = state.amplitudes[i];
  }

  auto pointwise = [&](const std::vector<std::complex<double>>& table) {
    for (std::size_t m = 0; m < grid; ++m) {
      const std::complex<double> a = slots[m];
      const std::complex<double> w = table[m];
      slots[m] = {a.real() * w.real() - a.imag() * w.imag(),
                  a.real() * w.imag() + a.imag() * w.real()};
    }
  };

  fft_pow2(slots, +1);  // to the position grid
  pointwise(v_half);
  for (int sub = 0; sub < schedule.n_sub; ++sub) {
    fft_pow2(slots, -1);
    for (std::size_t m = 0; m < grid; ++m) slots[m] /= static_cast<double>(grid);
    pointwise(kinetic);
    fft_pow2(slots, +1);
    pointwise(sub + 1 < schedule.n_sub ? v_full : v_half);
  }
  fft_pow2(slots, -1);
  for (std::size_t m = 0; m < grid; ++m) slots[m] /= static_cast<double>(grid);
  pointwise(tail_free);

  out.beta = state.beta;
  out.n_min = lo;
  out.amplitudes.resize(span);
  std::vector<double> window_probs(span);
  for (std::size_t i = 0; i < span; ++i) {
    out.amplitudes[i] = slots[slot_of(lo + static_cast<std::int64_t>(i), grid)];
    window_probs[i] = std::norm(out.amplitudes[i]);
  }
  const double kept = pairwise_sum(window_probs);
  const double total = norm_squared(state);
  const double leaked = total - kept;
  const double boundary =
      std::norm(out.amplitudes.front()) + std::norm(out.amplitudes.back());
  return boundary < kTailTolerance && leaked < kTailTolerance;
}

}  // namespace detail

// One full scaled period with a rectangular pulse at its start. Ladder
// bounds auto-extend (doubling) until the tail invariant holds, mirroring
// apply_kick.
inline QuantumState apply_pulse_period(QuantumState state, const RotorParams& params,
                                       const PulseSchedule& schedule) {
  if (schedule.amplitude == 0.0) {
    return apply_free(std::move(state), params.kbar);
  }
  const double kick_ratio = schedule.area() / params.kbar;
  int reach = static_cast<int>(std::ceil(kick_ratio)) + kLadderMargin;
  for (;;) {
    const std::int64_t lo = state.n_min - reach;
    const std::int64_t hi = state.n_max() + reach;
    const std::size_t span = static_cast<std::size_t>(hi - lo + 1);
    if (span > kMaxLadderSpan) {
      throw truncation_error("apply_pulse_period: ladder span " + std::to_string(span) +
                             " exceeds the hard cap without meeting the tail tolerance");
    }
    QuantumState out;
    if (detail::pulse_period_on_grid(state, params, schedule, lo, span, out)) {
      return out;
    }
    reach *= 2;
  }
}

// Energy of one plane-wave trajectory after n_kicks pulsed periods.
inline double pulse_trajectory_energy(double p0, const RotorParams& params,
                                      const PulseSchedule& schedule, int n_kicks,
                                      int ladder_halfwidth = 0) {
  if (n_kicks < 0) throw invalid_parameter("pulse_trajectory_energy: n_kicks must be >= 0");
  const double kick_ratio = schedule.area() / params.kbar;
  const int hw =
      ladder_halfwidth > 0 ? ladder_halfwidth : default_ladder_halfwidth(n_kicks, kick_ratio);
  QuantumState state = init_plane_wave(p0, hw);
  for (int q = 0; q < n_kicks; ++q) {
    state = apply_pulse_period(std::move(state), params, schedule);
  }
  return energy_of_state(state);
}

namespace detail {

inline EnergyEstimate pulse_ensemble_energy(const EnsembleSpec& spec, const RotorParams& params,
                                            const PulseSchedule& schedule, int n_kicks,
                                            unsigned workers) {
  std::vector<double> rms(spec.n_traj);
  parallel_for_chunks(spec.n_traj, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const InitialCondition ic = sample_initial_condition(spec, i);
      rms[i] = std::sqrt(2.0 * pulse_trajectory_energy(ic.p0, params, schedule, n_kicks));
    }
  });
  return energy_from_momenta({std::move(rms), Method::quantum_pulse, n_kicks});
}

}  // namespace detail

inline constexpr int kPulseMinSubsteps = 64;
inline constexpr int kPulseMaxSubsteps = 4096;
inline constexpr double kPulseConvergenceRtol = 1e-4;

// Same ensemble protocol as simulate_delta_ensemble, with apply_pulse_period
// in place of the delta kick. n_sub starts at 64 and doubles until two
// successive ensemble energies agree to 1e-4 relative.
inline EnergyRecord simulate_pulse_ensemble(const EnsembleSpec& spec, const RotorParams& params,
                                            int n_kicks, unsigned workers = 1) {
  if (n_kicks < 0) throw invalid_parameter("simulate_pulse_ensemble: n_kicks must be >= 0");
  int n_sub = kPulseMinSubsteps;
  EnergyEstimate prev =
      detail::pulse_ensemble_energy(spec, params, make_pulse_schedule(params, n_sub), n_kicks,
                                    workers);
  while (n_sub < kPulseMaxSubsteps) {
    n_sub *= 2;
    const EnergyEstimate cur =
        detail::pulse_ensemble_energy(spec, params, make_pulse_schedule(params, n_sub), n_kicks,
                                      workers);
    if (std::abs(cur.energy - prev.energy) <=
        kPulseConvergenceRtol * std::max(std::abs(cur.energy), 1e-300)) {
      return {params.kbar, params.kick_ratio, spec.sigma_p, n_kicks,   Method::quantum_pulse,
              cur.energy,  cur.std_err,       spec.n_traj,  spec.seed, ""};
    }
    prev = cur;
  }
  throw numerical_error("simulate_pulse_ensemble: substep doubling did not converge by n_sub = " +
                        std::to_string(kPulseMaxSubsteps));
}

}  // namespace aokr
