#pragma once

#include <cmath>
#include <string>

#include "aokr/bessel.hpp"
#include "aokr/errors.hpp"
#include "aokr/params.hpp"

namespace aokr {

// Inputs to the closed-form energies, with the derived kick arguments.
//   kappa_q  = 2 kappa sin(kbar/2) / kbar   (one-period phase-grating argument)
//   kappa_2q = 2 kappa sin(kbar)   / kbar   (two-period argument)
// Both have removable kbar -> 0 singularities, handled by series fallback.
struct AnalyticInputs {
  double kbar;
  double kick_ratio;
  double sigma_p;

  AnalyticInputs(double kbar_, double kick_ratio_, double sigma_p_)
      : kbar(kbar_), kick_ratio(kick_ratio_), sigma_p(sigma_p_) {
    if (!(kbar > 0.0)) {
      throw invalid_parameter("AnalyticInputs: kbar must be positive, got " +
                              std::to_string(kbar));
    }
    if (!(kick_ratio >= 0.0)) {
      throw invalid_parameter("AnalyticInputs: kick_ratio must be non-negative");
    }
    if (!(sigma_p >= 0.0)) {
      throw invalid_parameter("AnalyticInputs: sigma_p must be non-negative");
    }
  }

  explicit AnalyticInputs(const RotorParams& p)
      : AnalyticInputs(p.kbar, p.kick_ratio, p.sigma_p) {}

  double kappa() const { return kick_ratio * kbar; }
  double sigma_rho() const { return kbar * sigma_p; }

  double kappa_q() const {
    if (std::abs(kbar) < 1e-6) {
      const double x2 = 0.25 * kbar * kbar;  // (kbar/2)^2
      return kappa() * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    }
    return 2.0 * kappa() * std::sin(0.5 * kbar) / kbar;
  }

  double kappa_2q() const {
    if (std::abs(kbar) < 1e-6) {
      const double x2 = kbar * kbar;
      return 2.0 * kappa() * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    }
    return 2.0 * kappa() * std::sin(kbar) / kbar;
  }
};

// One-kick energy: the quasilinear result sigma_p^2/2 + k^2/4, kbar-free.
inline double energy_one_kick(const AnalyticInputs& in) {
  return 0.5 * in.sigma_p * in.sigma_p + 0.25 * in.kick_ratio * in.kick_ratio;
}

// Quasilinear growth rate per kick, k^2/4.
inline double quasilinear_rate(double kick_ratio) {
  if (!(kick_ratio >= 0.0)) {
    throw invalid_parameter("quasilinear_rate: kick_ratio must be non-negative");
  }
  return 0.25 * kick_ratio * kick_ratio;
}

// Two-kick energy for a broad momentum distribution:
// (sigma_rho^2 + kappa^2) / (2 kbar^2) = sigma_p^2/2 + k^2/2.
inline double energy_two_kicks_broad(const AnalyticInputs& in) {
  return 0.5 * in.sigma_p * in.sigma_p + 0.5 * in.kick_ratio * in.kick_ratio;
}

// Two-kick energy for a Gaussian distribution of width sigma_p:
//
//   E2 = [ sigma_rho^2 + kappa^2/2
//          + (kappa^2/2) (1 - J2(kappa_2q) e^{-2 sigma_rho^2})
//          - 2 kappa J1(kappa_q) sigma_rho^2 e^{-sigma_rho^2/2}
//          + kappa^2 (J0(kappa_q) - J2(kappa_q)) cos(kbar/2) e^{-sigma_rho^2/2}
//        ] / (2 kbar^2)
//
// The J1 cross term carries coefficient 2 kappa: the symmetrized correlator
// <{rho_0, sin phi_1}> of a Gaussian rho_0 evaluates to
// 2 J1(kappa_q) sigma_rho^2 e^{-sigma_rho^2/2}, and only this coefficient
// matches the exact quantum two-kick ensemble (both limiting cases below are
// insensitive to it). Limits: broad distributions recover
// energy_two_kicks_broad; kbar -> 0 recovers k^2 + sigma_p^2/2 (ballistic).
inline double energy_two_kicks(const AnalyticInputs& in) {
  const double kappa = in.kappa();
  const double sr2 = in.sigma_rho() * in.sigma_rho();
  const double kq = in.kappa_q();
  const double k2q = in.kappa_2q();
  const auto j012 = bessel_jn_array(2, kq);
  const double j2_2q = bessel_j2(k2q);
  const double damp1 = std::exp(-0.5 * sr2);
  const double damp2 = std::exp(-2.0 * sr2);

  const double bracket = sr2 + 0.5 * kappa * kappa
      + 0.5 * kappa * kappa * (1.0 - j2_2q * damp2)
      - 2.0 * kappa * j012[1] * sr2 * damp1
      + kappa * kappa * (j012[0] - j012[2]) * std::cos(0.5 * in.kbar) * damp1;
  return bracket / (2.0 * in.kbar * in.kbar);
}

// Critical effective Planck constant below which a typical atom crosses a
// full standing-wave cycle between kicks: kbar_crit = 2 pi / sigma_tot with
// sigma_tot = sqrt(sigma_p^2 + k^2/2) in 2-photon recoils. Evaluated both
// in closed form and via the SI critical period; the two routes must agree
// to 1e-10 relative (self-check of the unit derivation).
inline double kbar_critical(double kick_ratio, double sigma_p,
                            const PhysicalConstants& c = detail::default_constants()) {
  if (!(kick_ratio >= 0.0) || !(sigma_p >= 0.0)) {
    throw invalid_parameter("kbar_critical: kick_ratio and sigma_p must be non-negative");
  }
  const double sigma_tot = std::sqrt(sigma_p * sigma_p + 0.5 * kick_ratio * kick_ratio);
  if (sigma_tot == 0.0) {
    throw invalid_parameter("kbar_critical: sigma_p and kick_ratio cannot both be zero");
  }
  const double closed_form = 2.0 * pi / sigma_tot;

  const double sigma_si = sigma_tot * c.two_photon_recoil();  // kg m/s
  const double t_crit = c.wavelength * c.atomic_mass / (2.0 * sigma_si);
  const double si_route = kbar_from_period(t_crit, c);
  if (std::abs(si_route - closed_form) > 1e-10 * closed_form) {
    throw numerical_error("kbar_critical: closed form and SI route disagree: " +
                          std::to_string(closed_form) + " vs " + std::to_string(si_route));
  }
  return closed_form;
}

}  // namespace aokr
