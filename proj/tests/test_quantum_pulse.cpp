#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "aokr/analytic.hpp"
#include "aokr/quantum_delta.hpp"
#include "aokr/quantum_pulse.hpp"
#include "aokr/rng.hpp"
#include "aokr/sweep.hpp"

using namespace aokr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("PulseSchedule validation and area invariant", "[pulse]") {
  const PulseSchedule s(0.25, 16, 8.0);
  CHECK_THAT(s.area(), WithinRel(2.0, 1e-15));

  CHECK_THROWS_AS(PulseSchedule(0.0, 16, 8.0), invalid_parameter);
  CHECK_THROWS_AS(PulseSchedule(-0.1, 16, 8.0), invalid_parameter);
  CHECK_THROWS_AS(PulseSchedule(1.2, 16, 8.0), pulse_schedule_error);
  CHECK_THROWS_AS(PulseSchedule(0.5, 0, 8.0), invalid_parameter);
  CHECK_THROWS_AS(PulseSchedule(0.5, 16, -1.0), invalid_parameter);
}

TEST_CASE("make_pulse_schedule", "[pulse]") {
  SECTION("480 ns pulse at kbar = 3") {
    const RotorParams params(3.0, 7.0, 1.8, 480e-9);
    const PulseSchedule s = make_pulse_schedule(params, 64);
    CHECK_THAT(s.alpha, WithinRel(0.016632011930780396, 1e-12));
    CHECK_THAT(s.area(), WithinRel(params.kappa(), 1e-12));
    CHECK(s.n_sub == 64);
  }

  SECTION("pulse longer than the period") {
    // At kbar = 0.04 the 480 ns pulse exceeds the kick period entirely.
    const RotorParams params(0.04, 7.0, 1.8, 480e-9);
    CHECK_THROWS_AS(make_pulse_schedule(params, 64), pulse_schedule_error);
    CHECK_THROWS_WITH(make_pulse_schedule(params, 64),
                      Catch::Matchers::ContainsSubstring("pulse_longer_than_period"));
  }

  SECTION("missing or zero pulse width") {
    const RotorParams no_width(1.0, 7.0, 1.8);
    CHECK_THROWS_AS(make_pulse_schedule(no_width, 64), invalid_parameter);
    const RotorParams zero_width(1.0, 7.0, 1.8, 0.0);
    CHECK_THROWS_AS(make_pulse_schedule(zero_width, 64), invalid_parameter);
  }
}

TEST_CASE("traversal_fraction", "[pulse]") {
  const RotorParams params(3.0, 7.0, 1.8, 480e-9);
  CHECK(traversal_fraction(0.0, params) == 0.0);

  // Definition: kbar * p_rms * alpha / (2 pi); sign-insensitive.
  const double alpha = pulse_fraction(3.0, 480e-9);
  CHECK_THAT(traversal_fraction(5.0, params), WithinRel(3.0 * 5.0 * alpha / (2.0 * pi), 1e-13));
  CHECK(traversal_fraction(-5.0, params) == traversal_fraction(5.0, params));

  // Linear in the pulse width through alpha.
  const RotorParams doubled(3.0, 7.0, 1.8, 960e-9);
  CHECK_THAT(traversal_fraction(5.0, doubled), WithinRel(2.0 * traversal_fraction(5.0, params), 1e-12));

  const RotorParams no_width(3.0, 7.0, 1.8);
  CHECK_THROWS_AS(traversal_fraction(5.0, no_width), invalid_parameter);
}

TEST_CASE("traversal fraction stays below 0.08 over the sweep window", "[pulse]") {
  // Worst case over kbar in [0.1, 3] at k = 7 with the broader source,
  // using the analytic two-kick p_rms = sqrt(2 E2).
  const double sigma_p = 3.2;
  double worst = 0.0;
  for (double kbar : kbar_grid(SweepConfig{.kbar_min = 0.1, .kbar_max = 3.0, .steps = 25})) {
    const RotorParams params(kbar, 7.0, sigma_p, 480e-9);
    const double e2 = energy_two_kicks(AnalyticInputs(kbar, 7.0, sigma_p));
    worst = std::max(worst, traversal_fraction(std::sqrt(2.0 * e2), params));
  }
  INFO("worst traversal fraction = " << worst);
  CHECK(worst <= 0.08);
  CHECK(worst > 0.0);
}

TEST_CASE("zero amplitude pulse reduces to free evolution", "[pulse]") {
  const RotorParams params(1.3, 0.0, 1.8, 480e-9);
  const PulseSchedule schedule = make_pulse_schedule(params, 16);
  REQUIRE(schedule.amplitude == 0.0);

  QuantumState s = init_plane_wave(0.7, 6);
  CounterRng rng(3, 1);
  double norm = 0.0;
  for (auto& a : s.amplitudes) {
    a = {rng.gaussian(), rng.gaussian()};
    norm += std::norm(a);
  }
  for (auto& a : s.amplitudes) a /= std::sqrt(norm);

  const QuantumState pulsed = apply_pulse_period(s, params, schedule);
  const QuantumState free_only = apply_free(s, params.kbar);
  REQUIRE(pulsed.amplitudes.size() == free_only.amplitudes.size());
  for (std::size_t i = 0; i < pulsed.amplitudes.size(); ++i) {
    CHECK_THAT(std::abs(pulsed.amplitudes[i] - free_only.amplitudes[i]), WithinAbs(0.0, 1e-13));
  }
}

TEST_CASE("pulse period preserves the norm", "[pulse]") {
  const RotorParams params(1.0, 7.0, 0.0, 0.3 * period_from_kbar(1.0));
  const PulseSchedule schedule = make_pulse_schedule(params, 32);
  QuantumState s = init_plane_wave(1.2, default_ladder_halfwidth(1, 7.0));
  const QuantumState out = apply_pulse_period(s, params, schedule);
  CHECK_THAT(norm_squared(out), WithinAbs(1.0, 1e-10));
  CHECK(std::norm(out.amplitudes.front()) + std::norm(out.amplitudes.back()) < 1e-10);
}

TEST_CASE("pulse energies converge to the delta-kick limit as alpha -> 0", "[pulse]") {
  const double kbar = 1.0;
  const double k = 7.0;
  const double p0 = 1.2;
  const RotorParams delta_params(kbar, k, 0.0);
  const double e_delta = delta_trajectory_energy(p0, delta_params, 2);

  double prev_err = std::numeric_limits<double>::infinity();
  for (double alpha : {1e-2, 1e-3, 1e-4}) {
    const RotorParams params(kbar, k, 0.0, alpha * period_from_kbar(kbar));
    const PulseSchedule schedule = make_pulse_schedule(params, 64);
    const double e_pulse = pulse_trajectory_energy(p0, params, schedule, 2);
    const double rel_err = std::abs(e_pulse - e_delta) / e_delta;
    INFO("alpha=" << alpha << " rel_err=" << rel_err);
    CHECK(rel_err < prev_err);
    prev_err = rel_err;
  }
  // 0.1% agreement at alpha = 1e-4 (comfortably; the trend is ~alpha^1).
  CHECK(prev_err < 1e-3);
}

TEST_CASE("Strang splitting converges at second order in the substep", "[pulse]") {
  // Fixed alpha = 0.5; the n_sub -> 2 n_sub error ratio must approach 4.
  const double kbar = 1.0;
  const double k = 7.0;
  const RotorParams params(kbar, k, 0.0, 0.5 * period_from_kbar(kbar));
  const double p0 = 1.2;

  const double e8 = pulse_trajectory_energy(p0, params, PulseSchedule(0.5, 8, 2.0 * k * kbar), 2);
  const double e16 = pulse_trajectory_energy(p0, params, PulseSchedule(0.5, 16, 2.0 * k * kbar), 2);
  const double e32 = pulse_trajectory_energy(p0, params, PulseSchedule(0.5, 32, 2.0 * k * kbar), 2);
  const double d1 = e8 - e16;
  const double d2 = e16 - e32;
  REQUIRE(d2 != 0.0);
  const double ratio = d1 / d2;
  INFO("e8=" << e8 << " e16=" << e16 << " e32=" << e32 << " ratio=" << ratio);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("pulsed ensemble stays close to the delta-kicked ensemble", "[pulse]") {
  const double kbar = 3.0;
  const double k = 7.0;
  const double sigma_p = 1.8;
  const EnsembleSpec spec(300, 42, sigma_p);
  const RotorParams params(kbar, k, sigma_p, 480e-9);

  const EnergyRecord pulse = simulate_pulse_ensemble(spec, params, 2);
  const EnergyRecord delta = simulate_delta_ensemble(spec, params, 2);
  INFO("pulse=" << pulse.energy << " delta=" << delta.energy);
  CHECK_THAT(pulse.energy, WithinRel(delta.energy, 0.03));
  CHECK(pulse.method == Method::quantum_pulse);
  CHECK(pulse.error.empty());
  CHECK(pulse.std_err > 0.0);
}

TEST_CASE("zero kick strength pulse ensemble keeps the thermal energy", "[pulse]") {
  const EnsembleSpec spec(200, 6, 2.0);
  const RotorParams params(1.0, 0.0, 2.0, 480e-9);
  const EnergyRecord record = simulate_pulse_ensemble(spec, params, 2);
  std::vector<double> p0;
  for (const auto& ic : sample_initial_conditions(spec)) p0.push_back(ic.p0);
  const auto direct = energy_from_momenta({std::move(p0), Method::classical, 0});
  CHECK_THAT(record.energy, WithinRel(direct.energy, 1e-10));
}

TEST_CASE("pulse ensemble is worker-count invariant", "[pulse]") {
  const EnsembleSpec spec(48, 4, 1.8);
  const RotorParams params(2.0, 5.0, 1.8, 480e-9);
  const auto a = simulate_pulse_ensemble(spec, params, 2, 1);
  const auto b = simulate_pulse_ensemble(spec, params, 2, 6);
  CHECK(a.energy == b.energy);
  CHECK(a.std_err == b.std_err);
}

TEST_CASE("simulate_pulse_ensemble rejects negative kick counts", "[pulse]") {
  const EnsembleSpec spec(10, 1, 1.0);
  const RotorParams params(1.0, 5.0, 1.0, 480e-9);
  CHECK_THROWS_AS(simulate_pulse_ensemble(spec, params, -1), invalid_parameter);
}
