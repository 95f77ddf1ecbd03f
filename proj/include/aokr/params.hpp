#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "aokr/errors.hpp"

namespace aokr {

inline constexpr double pi = std::numbers::pi;

// Laser/atom constants used to convert between scaled rotor units and SI.
// Defaults describe caesium driven on the D2 line at 852 nm.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;         // J s (2018 CODATA exact)
  double atomic_mass = 2.2069469514370954e-25;  // kg (132.90545196 u)
  double wavelength = 852.0e-9;          // m

  // Laser wavenumber k_l = 2 pi / lambda.
  double laser_wavenumber() const { return 2.0 * pi / wavelength; }

  // One-photon recoil frequency omega_r = hbar k_l^2 / (2 M).
  double recoil_frequency() const {
    const double kl = laser_wavenumber();
    return hbar * kl * kl / (2.0 * atomic_mass);
  }

  // Momentum of one two-photon recoil, 2 hbar k_l (the unit of p).
  double two_photon_recoil() const { return 2.0 * hbar * laser_wavenumber(); }

  static PhysicalConstants caesium() { return PhysicalConstants{}; }
};

namespace detail {
inline const PhysicalConstants& default_constants() {
  static const PhysicalConstants c = PhysicalConstants::caesium();
  return c;
}
}  // namespace detail

// Effective Planck constant kbar = 8 omega_r T for kick period T (seconds).
inline double kbar_from_period(double period,
                               const PhysicalConstants& c = detail::default_constants()) {
  if (!(period > 0.0)) {
    throw invalid_parameter("kbar_from_period: period must be positive, got " +
                            std::to_string(period));
  }
  return 8.0 * c.recoil_frequency() * period;
}

// Inverse of kbar_from_period: kick period in seconds for a given kbar.
inline double period_from_kbar(double kbar,
                               const PhysicalConstants& c = detail::default_constants()) {
  if (!(kbar > 0.0)) {
    throw invalid_parameter("period_from_kbar: kbar must be positive, got " +
                            std::to_string(kbar));
  }
  return kbar / (8.0 * c.recoil_frequency());
}

// Fraction of the kick period occupied by a rectangular pulse of duration
// pulse_width (seconds): alpha = pulse_width / T = pulse_width * 8 omega_r / kbar.
inline double pulse_fraction(double kbar, double pulse_width,
                             const PhysicalConstants& c = detail::default_constants()) {
  if (!(kbar > 0.0)) {
    throw invalid_parameter("pulse_fraction: kbar must be positive, got " +
                            std::to_string(kbar));
  }
  if (!(pulse_width >= 0.0)) {
    throw invalid_parameter("pulse_fraction: pulse_width must be non-negative, got " +
                            std::to_string(pulse_width));
  }
  return pulse_width / period_from_kbar(kbar, c);
}

// Scaled momentum rho = kbar * p, where p is momentum in two-photon recoils.
inline double scaled_momentum(double p, double kbar) { return kbar * p; }

// Momentum in two-photon recoils from scaled momentum rho.
inline double momentum_from_scaled(double rho, double kbar) {
  if (kbar == 0.0) {
    throw invalid_parameter("momentum_from_scaled: kbar must be non-zero");
  }
  return rho / kbar;
}

// Quasimomentum (fractional part of p in two-photon recoils), folded to
// the symmetric interval [-0.5, 0.5).
inline double quasimomentum(double p) {
  double beta = p - std::floor(p + 0.5);
  if (beta >= 0.5) beta = -0.5;  // guard the floor rounding edge
  return beta;
}

// Parameters of one rotor experiment in scaled units.
//
//   kbar       effective Planck constant (> 0)
//   kick_ratio k = kappa / kbar, the kick strength per kbar (>= 0)
//   sigma_p    initial momentum spread in two-photon recoils (>= 0)
//   pulse_width  optional rectangular pulse duration in seconds (>= 0);
//                unset means ideal delta kicks
struct RotorParams {
  double kbar;
  double kick_ratio;
  double sigma_p;
  std::optional<double> pulse_width;

  RotorParams(double kbar_, double kick_ratio_, double sigma_p_,
              std::optional<double> pulse_width_ = std::nullopt)
      : kbar(kbar_), kick_ratio(kick_ratio_), sigma_p(sigma_p_), pulse_width(pulse_width_) {
    if (!(kbar > 0.0)) {
      throw invalid_parameter("RotorParams: kbar must be positive, got " +
                              std::to_string(kbar));
    }
    if (!(kick_ratio >= 0.0)) {
      throw invalid_parameter("RotorParams: kick_ratio must be non-negative, got " +
                              std::to_string(kick_ratio));
    }
    if (!(sigma_p >= 0.0)) {
      throw invalid_parameter("RotorParams: sigma_p must be non-negative, got " +
                              std::to_string(sigma_p));
    }
    if (pulse_width && !(*pulse_width >= 0.0)) {
      throw invalid_parameter("RotorParams: pulse_width must be non-negative, got " +
                              std::to_string(*pulse_width));
    }
  }

  // Classical stochasticity parameter kappa = k * kbar.
  double kappa() const { return kick_ratio * kbar; }

  // Scaled momentum spread sigma_rho = kbar * sigma_p.
  double sigma_rho() const { return kbar * sigma_p; }
};

}  // namespace aokr
