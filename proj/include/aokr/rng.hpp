#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "aokr/params.hpp"

namespace aokr {

// Philox4x64-10 counter-based block cipher (Salmon et al. round structure).
// philox4x64(counter, key) -> 4 independent 64-bit words. Pure function:
// trajectory streams are fully parallel and order-independent.
inline std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> ctr,
                                               std::array<std::uint64_t, 2> key) {
  constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
  constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
  constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
  constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

  auto mulhilo = [](std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(prod >> 64);
    return static_cast<std::uint64_t>(prod);
  };

  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kMul0, ctr[0], hi0);
    const std::uint64_t lo1 = mulhilo(kMul1, ctr[2], hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

// One deterministic random stream, keyed by (seed, stream index). Streams
// with distinct keys are statistically independent; the same key always
// reproduces the same sequence regardless of what other streams do.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_{seed, stream} {}

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      buffer_ = philox4x64({block_, 0, 0, 0}, key_);
      ++block_;
      pos_ = 0;
    }
    return buffer_[pos_++];
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform double in (0, 1]; safe as a log() argument.
  double uniform_open01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal deviate via the Box-Muller cosine branch.
  // Consumes exactly two 64-bit words.
  double gaussian() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  }

 private:
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> buffer_{};
  std::uint64_t block_ = 0;
  int pos_ = 4;
};

}  // namespace aokr
