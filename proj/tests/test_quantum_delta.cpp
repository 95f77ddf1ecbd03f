#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "aokr/analytic.hpp"
#include "aokr/bessel.hpp"
#include "aokr/classical_map.hpp"
#include "aokr/quantum_delta.hpp"
#include "aokr/rng.hpp"

using namespace aokr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Direct Jacobi-Anger convolution c'_n = sum_m i^m J_m(k) c_{n-m}, the
// independent oracle for apply_kick. i^m J_m(k) = i^|m| J_|m|(k) for all m.
QuantumState kick_by_convolution(const QuantumState& in, double k, int reach) {
  const std::int64_t lo = in.n_min - reach;
  const std::int64_t hi = in.n_max() + reach;
  const int max_order = static_cast<int>(hi - lo);
  const auto j = bessel_jn_array(max_order, k);
  const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  QuantumState out;
  out.beta = in.beta;
  out.n_min = lo;
  out.amplitudes.assign(static_cast<std::size_t>(hi - lo + 1), {0.0, 0.0});
  for (std::int64_t n = lo; n <= hi; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t src = 0; src < in.amplitudes.size(); ++src) {
      const std::int64_t m = n - (in.n_min + static_cast<std::int64_t>(src));
      const int am = static_cast<int>(std::llabs(m));
      if (am > max_order) continue;
      acc += i_pow[am % 4] * j[static_cast<std::size_t>(am)] * in.amplitudes[src];
    }
    out.amplitudes[static_cast<std::size_t>(n - lo)] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("init_plane_wave", "[quantum]") {
  const QuantumState s = init_plane_wave(2.3, 5);
  CHECK_THAT(s.beta, WithinAbs(0.3, 1e-12));
  CHECK(s.n_min == -3);
  CHECK(s.n_max() == 7);
  REQUIRE(s.amplitudes.size() == 11);
  CHECK(s.amplitudes[5] == std::complex<double>(1.0, 0.0));
  CHECK_THAT(s.momentum_at(5), WithinAbs(2.3, 1e-12));
  CHECK_THAT(norm_squared(s), WithinAbs(1.0, 1e-15));

  // Half-integer momenta map to beta = -0.5.
  const QuantumState h = init_plane_wave(-0.5, 2);
  CHECK(h.beta == -0.5);
  CHECK(h.n_min == -2);
  CHECK_THAT(h.momentum_at(2), WithinAbs(-0.5, 1e-15));
  const QuantumState h2 = init_plane_wave(0.5, 2);
  CHECK(h2.beta == -0.5);
  CHECK_THAT(h2.momentum_at(2), WithinAbs(0.5, 1e-15));

  CHECK_THROWS_AS(init_plane_wave(0.0, 0), invalid_parameter);
}

TEST_CASE("energy_of_state", "[quantum]") {
  const QuantumState s = init_plane_wave(3.0, 4);
  CHECK_THAT(energy_of_state(s), WithinRel(4.5, 1e-14));

  QuantumState split = init_plane_wave(0.0, 2);
  split.amplitudes.assign(5, {0.0, 0.0});
  split.amplitudes[1] = {1.0 / std::sqrt(2.0), 0.0};  // n = -1
  split.amplitudes[3] = {0.0, 1.0 / std::sqrt(2.0)};  // n = +1
  CHECK_THAT(energy_of_state(split), WithinRel(0.5, 1e-14));

  QuantumState bad = init_plane_wave(0.0, 2);
  bad.amplitudes[2] = {0.5, 0.0};
  CHECK_THROWS_AS(energy_of_state(bad), invalid_parameter);
}

TEST_CASE("apply_free phases", "[quantum]") {
  QuantumState s = init_plane_wave(0.0, 3);
  s.amplitudes.assign(7, {0.0, 0.0});
  for (auto& a : s.amplitudes) a = {1.0 / std::sqrt(7.0), 0.0};

  SECTION("probabilities and energy are invariant") {
    const double e0 = energy_of_state(s);
    const QuantumState after = apply_free(s, 1.7);
    CHECK_THAT(energy_of_state(after), WithinRel(e0, 1e-13));
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      CHECK_THAT(std::norm(after.amplitudes[i]), WithinRel(std::norm(s.amplitudes[i]), 1e-13));
    }
  }

  SECTION("quantum resonance kbar = 4 pi at beta = 0 is the identity") {
    const QuantumState after = apply_free(s, 4.0 * pi);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      CHECK_THAT(std::abs(after.amplitudes[i] - s.amplitudes[i]), WithinAbs(0.0, 1e-12));
    }
  }

  SECTION("antiresonance kbar = 2 pi at beta = 0 alternates signs") {
    const QuantumState after = apply_free(s, 2.0 * pi);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      const std::int64_t n = s.n_min + static_cast<std::int64_t>(i);
      const double sign = (((n % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
      CHECK_THAT(std::abs(after.amplitudes[i] - sign * s.amplitudes[i]), WithinAbs(0.0, 1e-12));
    }
  }

  SECTION("kbar <= 0 throws") {
    CHECK_THROWS_AS(apply_free(s, 0.0), invalid_parameter);
    CHECK_THROWS_AS(apply_free(s, -1.0), invalid_parameter);
  }
}

TEST_CASE("apply_kick reproduces the Bessel amplitude distribution", "[quantum]") {
  for (double k : {1.5, 7.0}) {
    const QuantumState s0 = init_plane_wave(0.0, default_ladder_halfwidth(1, k));
    const QuantumState s1 = apply_kick(s0, k);
    CHECK_THAT(norm_squared(s1), WithinAbs(1.0, 1e-12));

    const int nmax = static_cast<int>(s1.amplitudes.size());
    const auto j = bessel_jn_array(nmax, k);
    for (std::size_t i = 0; i < s1.amplitudes.size(); ++i) {
      const std::int64_t m = s1.n_min + static_cast<std::int64_t>(i);  // shift from n0 = 0
      const double jm = j[static_cast<std::size_t>(std::llabs(m))];
      INFO("k=" << k << " m=" << m);
      CHECK_THAT(std::norm(s1.amplitudes[i]), WithinAbs(jm * jm, 1e-10));
    }

    // Boundary-tail invariant.
    CHECK(std::norm(s1.amplitudes.front()) + std::norm(s1.amplitudes.back()) < 1e-10);
  }
}

TEST_CASE("apply_kick matches direct Jacobi-Anger convolution on a superposition",
          "[quantum]") {
  const double k = 2.7;
  QuantumState s = init_plane_wave(1.2, 4);
  CounterRng rng(13, 0);
  double norm = 0.0;
  for (auto& a : s.amplitudes) {
    a = {rng.gaussian(), rng.gaussian()};
    norm += std::norm(a);
  }
  for (auto& a : s.amplitudes) a /= std::sqrt(norm);

  const QuantumState fft_out = apply_kick(s, k);
  const QuantumState conv_out = kick_by_convolution(s, k, static_cast<int>(std::ceil(k)) + 40);

  // Compare on the overlap of the two ladders (both cover all significant sites).
  double max_err = 0.0;
  for (std::size_t i = 0; i < fft_out.amplitudes.size(); ++i) {
    const std::int64_t n = fft_out.n_min + static_cast<std::int64_t>(i);
    std::complex<double> ref{0.0, 0.0};
    if (n >= conv_out.n_min && n <= conv_out.n_max()) {
      ref = conv_out.amplitudes[static_cast<std::size_t>(n - conv_out.n_min)];
    }
    max_err = std::max(max_err, std::abs(fft_out.amplitudes[i] - ref));
  }
  CHECK(max_err < 1e-12);
}

TEST_CASE("apply_kick edge cases", "[quantum]") {
  const QuantumState s = init_plane_wave(0.7, 3);
  const QuantumState same = apply_kick(s, 0.0);
  CHECK(same.amplitudes == s.amplitudes);
  CHECK(same.n_min == s.n_min);
  CHECK_THROWS_AS(apply_kick(s, -1.0), invalid_parameter);
}

TEST_CASE("single-kick trajectory energy is p0^2/2 + k^2/4", "[quantum]") {
  const RotorParams params(1.3, 7.0, 0.0);
  CHECK_THAT(delta_trajectory_energy(1.7, params, 1), WithinRel(0.5 * 1.7 * 1.7 + 12.25, 1e-10));
  CHECK_THAT(delta_trajectory_energy(0.0, params, 1), WithinRel(12.25, 1e-10));
  // Zero kicks: just the initial kinetic energy.
  CHECK_THAT(delta_trajectory_energy(2.5, params, 0), WithinRel(3.125, 1e-13));
  CHECK_THROWS_AS(delta_trajectory_energy(0.0, params, -1), invalid_parameter);
}

TEST_CASE("resonance and antiresonance two-kick energies", "[quantum]") {
  const double k = 3.0;

  // kbar = 4 pi, beta = 0: free evolution is the identity, kicks compound to
  // strength 2k, so E = (2k)^2/4 = k^2.
  const RotorParams res(4.0 * pi, k, 0.0);
  CHECK_THAT(delta_trajectory_energy(0.0, res, 2), WithinRel(k * k, 1e-9));

  // kbar = 2 pi, beta = 0: the free phases shift phi by pi, the second kick
  // undoes the first, and the energy returns to the initial value 0.
  const RotorParams anti(2.0 * pi, k, 0.0);
  CHECK_THAT(delta_trajectory_energy(0.0, anti, 2), WithinAbs(0.0, 1e-9));
}

TEST_CASE("delta ensemble with zero kick strength keeps the thermal energy", "[quantum]") {
  const EnsembleSpec spec(300, 17, 2.2);
  const RotorParams params(1.0, 0.0, 2.2);
  const auto record = simulate_delta_ensemble(spec, params, 2);

  std::vector<double> p0;
  for (const auto& ic : sample_initial_conditions(spec)) p0.push_back(ic.p0);
  const auto direct = energy_from_momenta({std::move(p0), Method::classical, 0});
  CHECK_THAT(record.energy, WithinRel(direct.energy, 1e-10));
  CHECK(record.method == Method::quantum_delta);
  CHECK(record.n_traj == 300);
  CHECK(record.error.empty());
}

TEST_CASE("one-kick ensemble energy is independent of kbar", "[quantum]") {
  const EnsembleSpec spec(200, 5, 4.2);
  const auto a = simulate_delta_ensemble(spec, RotorParams(0.1, 5.2, 4.2), 1);
  const auto b = simulate_delta_ensemble(spec, RotorParams(1.0, 5.2, 4.2), 1);
  const auto c = simulate_delta_ensemble(spec, RotorParams(3.0, 5.2, 4.2), 1);
  CHECK_THAT(a.energy, WithinRel(b.energy, 1e-10));
  CHECK_THAT(b.energy, WithinRel(c.energy, 1e-10));
  // And matches sigma_hat^2/2 + k^2/4 built from the same sample.
  std::vector<double> p0;
  for (const auto& ic : sample_initial_conditions(spec)) p0.push_back(ic.p0);
  const auto thermal = energy_from_momenta({std::move(p0), Method::classical, 0});
  CHECK_THAT(a.energy, WithinRel(thermal.energy + 0.25 * 5.2 * 5.2, 1e-10));
}

TEST_CASE("two-kick ensemble energy matches the analytic curve", "[quantum]") {
  const double kbar = 2.0;
  const double k = 7.0;
  const double sigma_p = 1.8;
  const EnsembleSpec spec(4000, 42, sigma_p);
  const auto record = simulate_delta_ensemble(spec, RotorParams(kbar, k, sigma_p), 2);
  const double expected = energy_two_kicks(AnalyticInputs(kbar, k, sigma_p));
  INFO("sim=" << record.energy << " +/- " << record.std_err << " analytic=" << expected);
  CHECK(std::abs(record.energy - expected) < 3.0 * record.std_err);
  CHECK(record.std_err > 0.0);
}

TEST_CASE("quantum ensemble approaches the classical map for small kbar", "[quantum]") {
  const double kbar = 0.05;
  const double k = 5.5;
  const double sigma_p = 3.6;
  const RotorParams params(kbar, k, sigma_p);
  const EnsembleSpec spec(20000, 42, sigma_p);
  const auto quantum = simulate_delta_ensemble(spec, params, 2);
  const auto classical = energy_from_momenta(evolve_classical_ensemble(spec, params, 2));
  INFO("quantum=" << quantum.energy << " classical=" << classical.energy);
  CHECK_THAT(quantum.energy, WithinRel(classical.energy, 0.02));
  // Both sit near the analytic two-kick value.
  const double e2 = energy_two_kicks(AnalyticInputs(kbar, k, sigma_p));
  CHECK(std::abs(quantum.energy - e2) < 3.0 * quantum.std_err);
}

TEST_CASE("delta evolution is worker-count invariant", "[quantum]") {
  const EnsembleSpec spec(64, 9, 1.8);
  const RotorParams params(0.5, 7.0, 1.8);
  const auto one = evolve_delta_momenta(spec, params, 2, 1);
  const auto many = evolve_delta_momenta(spec, params, 2, 8);
  REQUIRE(one.momenta.size() == many.momenta.size());
  for (std::size_t i = 0; i < one.momenta.size(); ++i) {
    CHECK(one.momenta[i] == many.momenta[i]);
  }
}
