#pragma once

#include <cmath>
#include <vector>

#include "aokr/ensemble.hpp"
#include "aokr/errors.hpp"
#include "aokr/parallel.hpp"
#include "aokr/params.hpp"

namespace aokr {

struct ClassicalState {
  double phi;  // radians, stored unwrapped
  double rho;  // scaled momentum kbar * p
};

// One period of the standard map, kick first then drift:
//   rho' = rho - kappa sin(phi);  phi' = phi + rho'.
// This order makes the two-kick momentum rho2 = rho0 - kappa sin(phi0)
// - kappa sin(phi1) hold literally.
inline ClassicalState standard_map_step(ClassicalState s, double kappa) {
  const double rho_next = s.rho - kappa * std::sin(s.phi);
  return {s.phi + rho_next, rho_next};
}

// Exact inverse of standard_map_step (drift back, then un-kick).
inline ClassicalState standard_map_inverse(ClassicalState s, double kappa) {
  const double phi_prev = s.phi - s.rho;
  return {phi_prev, s.rho + kappa * std::sin(phi_prev)};
}

// Evolves the sampled ensemble n_kicks periods and returns momenta in
// 2-photon recoils (p = rho / kbar). Trajectories are independent; each
// writes only its own slot, so any worker count gives identical output.
inline MomentumEnsemble evolve_classical_ensemble(const EnsembleSpec& spec,
                                                  const RotorParams& params, int n_kicks,
                                                  unsigned workers = 1) {
  if (n_kicks < 0) {
    throw invalid_parameter("evolve_classical_ensemble: n_kicks must be >= 0");
  }
  const double kappa = params.kappa();
  std::vector<double> momenta(spec.n_traj);
  parallel_for_chunks(spec.n_traj, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const InitialCondition ic = sample_initial_condition(spec, i);
      ClassicalState s{ic.phi0, scaled_momentum(ic.p0, params.kbar)};
      for (int q = 0; q < n_kicks; ++q) s = standard_map_step(s, kappa);
      momenta[i] = momentum_from_scaled(s.rho, params.kbar);
    }
  });
  return {std::move(momenta), Method::classical, n_kicks};
}

struct PortraitPoint {
  double phi;  // reduced to [0, 2 pi)
  double p;    // 2-photon recoils
};

// Stroboscopic phase portrait: every trajectory's (phi mod 2 pi, p) at
// iterations 0..n_iter, trajectory-major order, n_traj*(n_iter+1) points.
inline std::vector<PortraitPoint> phase_portrait(const EnsembleSpec& spec,
                                                 const RotorParams& params, int n_iter,
                                                 unsigned workers = 1) {
  if (n_iter < 1) throw invalid_parameter("phase_portrait: n_iter must be >= 1");
  const double kappa = params.kappa();
  const std::size_t per_traj = static_cast<std::size_t>(n_iter) + 1;
  std::vector<PortraitPoint> points(spec.n_traj * per_traj);
  auto wrap = [](double phi) {
    double w = phi - 2.0 * pi * std::floor(phi / (2.0 * pi));
    if (w >= 2.0 * pi) w = 0.0;  // guard the floor rounding edge
    return w;
  };
  parallel_for_chunks(spec.n_traj, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const InitialCondition ic = sample_initial_condition(spec, i);
      ClassicalState s{ic.phi0, scaled_momentum(ic.p0, params.kbar)};
      for (std::size_t t = 0; t < per_traj; ++t) {
        points[i * per_traj + t] = {wrap(s.phi), momentum_from_scaled(s.rho, params.kbar)};
        if (t + 1 < per_traj) s = standard_map_step(s, kappa);
      }
    }
  });
  return points;
}

}  // namespace aokr
