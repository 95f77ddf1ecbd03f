#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aokr/errors.hpp"
#include "aokr/numerics.hpp"
#include "aokr/params.hpp"
#include "aokr/rng.hpp"

namespace aokr {

// Simulation method tags. Enumerator order matches the alphabetical order of
// the CSV tags, which is the row sort order within one kbar grid point.
enum class Method {
  analytic1,      // one-kick closed form
  analytic2,      // two-kick finite-width closed form
  analytic_broad, // two-kick broad-distribution closed form
  classical,
  quantum_delta,
  quantum_pulse,
};

inline std::string to_string(Method m) {
  switch (m) {
    case Method::analytic1: return "analytic1";
    case Method::analytic2: return "analytic2";
    case Method::analytic_broad: return "analytic_broad";
    case Method::classical: return "classical";
    case Method::quantum_delta: return "quantum_delta";
    case Method::quantum_pulse: return "quantum_pulse";
  }
  throw invalid_parameter("to_string(Method): unknown enumerator");
}

inline Method method_from_string(const std::string& s) {
  if (s == "analytic1") return Method::analytic1;
  if (s == "analytic2") return Method::analytic2;
  if (s == "analytic_broad") return Method::analytic_broad;
  if (s == "classical") return Method::classical;
  if (s == "quantum_delta") return Method::quantum_delta;
  if (s == "quantum_pulse") return Method::quantum_pulse;
  throw invalid_parameter("unknown method tag: '" + s + "'");
}

// Description of a sampled thermal ensemble: uniform phase on [0, 2 pi),
// Gaussian momentum with standard deviation sigma_p (2-photon recoils).
struct EnsembleSpec {
  std::size_t n_traj;
  std::uint64_t seed;
  double sigma_p;

  EnsembleSpec(std::size_t n_traj_, std::uint64_t seed_, double sigma_p_)
      : n_traj(n_traj_), seed(seed_), sigma_p(sigma_p_) {
    if (n_traj == 0) throw invalid_parameter("EnsembleSpec: n_traj must be >= 1");
    if (!(sigma_p >= 0.0)) {
      throw invalid_parameter("EnsembleSpec: sigma_p must be non-negative, got " +
                              std::to_string(sigma_p));
    }
  }
};

struct InitialCondition {
  double phi0;  // radians in [0, 2 pi)
  double p0;    // 2-photon recoils
};

// Trajectory i's draws come from the counter stream keyed by (seed, i):
// the result depends only on (spec, i), never on evaluation order.
inline InitialCondition sample_initial_condition(const EnsembleSpec& spec, std::size_t i) {
  CounterRng rng(spec.seed, static_cast<std::uint64_t>(i));
  const double phi0 = 2.0 * pi * rng.uniform01();
  const double p0 = spec.sigma_p * rng.gaussian();
  return {phi0, p0};
}

inline std::vector<InitialCondition> sample_initial_conditions(const EnsembleSpec& spec) {
  std::vector<InitialCondition> out(spec.n_traj);
  for (std::size_t i = 0; i < spec.n_traj; ++i) {
    out[i] = sample_initial_condition(spec, i);
  }
  return out;
}

// A set of per-trajectory momenta (classical) or per-trajectory rms momenta
// (quantum, each entry sqrt(<p^2>) of one evolved state), tagged with the
// method and kick count that produced them.
struct MomentumEnsemble {
  std::vector<double> momenta;  // 2-photon recoils
  Method method;
  int n_kicks;
};

// One row of a sweep: everything needed to serialize and to recompute.
struct EnergyRecord {
  double kbar;
  double kick_ratio;
  double sigma_p;
  int n_kicks;
  Method method;
  double energy;   // 2-photon recoil energy units
  double std_err;  // same units
  std::size_t n_traj;
  std::uint64_t seed;
  std::string error;  // empty = clean row; otherwise a failure flag
};

struct EnergyEstimate {
  double energy;
  double std_err;
};

// energy = mean(p^2)/2; std_err = sample std dev of p^2/2 over sqrt(n).
inline EnergyEstimate energy_from_momenta(const MomentumEnsemble& ensemble) {
  if (ensemble.momenta.empty()) {
    throw invalid_parameter("energy_from_momenta: empty ensemble");
  }
  std::vector<double> half_p2(ensemble.momenta.size());
  for (std::size_t i = 0; i < ensemble.momenta.size(); ++i) {
    half_p2[i] = 0.5 * ensemble.momenta[i] * ensemble.momenta[i];
  }
  const MeanStderr ms = mean_and_stderr(half_p2);
  return {ms.mean, ms.std_err};
}

// Removes the initial thermal energy sigma_p^2/2. Negative results are
// passed through unclamped (callers flag them, see with_thermal_subtracted).
inline double subtract_thermal(double energy, double sigma_p) {
  if (!(energy >= 0.0)) {
    throw invalid_parameter("subtract_thermal: energy must be non-negative, got " +
                            std::to_string(energy));
  }
  return energy - 0.5 * sigma_p * sigma_p;
}

// Record-level thermal subtraction; flags (does not clamp) negative results.
inline EnergyRecord with_thermal_subtracted(EnergyRecord record) {
  record.energy = subtract_thermal(record.energy, record.sigma_p);
  if (record.energy < 0.0 && record.error.empty()) {
    record.error = "negative_after_thermal_subtraction";
  }
  return record;
}

struct KickRatioEstimate {
  double value;        // estimated kappa/kbar
  double uncertainty;  // propagated from the records' std_err
};

namespace detail {

struct PlateauStats {
  double mean;
  double mean_err;  // standard error of the mean, propagated from rows
  std::size_t count;
};

inline PlateauStats plateau_mean(std::span<const EnergyRecord> records) {
  std::vector<double> energies;
  double err_sq = 0.0;
  for (const auto& r : records) {
    if (r.kbar >= 1.0 && r.error.empty()) {
      energies.push_back(r.energy);
      err_sq += r.std_err * r.std_err;
    }
  }
  if (energies.empty()) {
    throw calibration_error("no usable records with kbar >= 1");
  }
  const double n = static_cast<double>(energies.size());
  return {pairwise_sum(energies) / n, std::sqrt(err_sq) / n, energies.size()};
}

}  // namespace detail

// Plateau calibration (broad-limit inversion): k = sqrt(2 (Ebar - sigma_p^2/2))
// with Ebar the unweighted mean of two-kick energies at kbar >= 1.
inline KickRatioEstimate estimate_kick_ratio_plateau(std::span<const EnergyRecord> records,
                                                     double sigma_p) {
  const auto stats = detail::plateau_mean(records);
  const double radicand = 2.0 * (stats.mean - 0.5 * sigma_p * sigma_p);
  if (radicand < 0.0) {
    throw calibration_error("plateau calibration: mean energy " + std::to_string(stats.mean) +
                            " below thermal floor sigma_p^2/2");
  }
  const double k = std::sqrt(radicand);
  // dk = dE / k from k^2 = 2 E_kick; boundary k = 0 has unbounded sensitivity.
  const double unc = (k > 0.0) ? stats.mean_err / k
                               : std::numeric_limits<double>::infinity();
  return {k, unc};
}

// Difference calibration: the one- to two-kick energy increase is the
// quasilinear step k^2/4, so k = sqrt(4 (E2bar - E1bar)) over matched
// kbar >= 1 records.
inline KickRatioEstimate estimate_kick_ratio_difference(std::span<const EnergyRecord> one_kick,
                                                        std::span<const EnergyRecord> two_kick) {
  std::vector<double> diffs;
  double err_sq = 0.0;
  for (const auto& r2 : two_kick) {
    if (!(r2.kbar >= 1.0) || !r2.error.empty()) continue;
    for (const auto& r1 : one_kick) {
      if (!(r1.kbar >= 1.0) || !r1.error.empty()) continue;
      const double scale = std::max({std::abs(r1.kbar), std::abs(r2.kbar), 1.0});
      if (std::abs(r1.kbar - r2.kbar) <= 1e-9 * scale) {
        diffs.push_back(r2.energy - r1.energy);
        err_sq += r1.std_err * r1.std_err + r2.std_err * r2.std_err;
        break;
      }
    }
  }
  if (diffs.empty()) {
    throw calibration_error("no matched (one-kick, two-kick) records with kbar >= 1");
  }
  const double n = static_cast<double>(diffs.size());
  const double mean_diff = pairwise_sum(diffs) / n;
  const double diff_err = std::sqrt(err_sq) / n;
  if (mean_diff < 0.0) {
    throw calibration_error("difference calibration: two-kick mean below one-kick mean");
  }
  const double k = std::sqrt(4.0 * mean_diff);
  const double unc = (k > 0.0) ? 2.0 * diff_err / k
                               : std::numeric_limits<double>::infinity();
  return {k, unc};
}

}  // namespace aokr
