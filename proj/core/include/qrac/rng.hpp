// Copyright 2026 The QRAC-Box Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <limits>

namespace qrac {

/**
 * @brief SplitMix64-CTR: a counter-based generator keyed by (seed, trial, stream).
 *
 * Draw n (n = 0, 1, ...) of a stream is
 *
 *     key    = mix(seed + G * (1 + mix(trial + H * (1 + stream))))
 *     out(n) = mix(key + G * (n + 1))
 *
 * with G = 0x9E3779B97F4A7C15, H = 0x632BE59BD9B4E019 and `mix` the SplitMix64
 * finalizer. All arithmetic is modulo 2^64. Uniform doubles are
 * (out >> 11) * 2^-53 and single bits are out >> 63, so any implementation that
 * follows these formulas reproduces every transcript bit-for-bit.
 *
 * Satisfies UniformRandomBitGenerator, but the simulator itself only uses
 * `uniform()` and `bit()` so results never depend on a standard library's
 * distribution implementation.
 */
class CounterRng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kStreamMul = 0x632BE59BD9B4E019ULL;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t trial = 0,
                       std::uint64_t stream = 0) noexcept
      : key_(mix(seed + kGolden * (1 + mix(trial + kStreamMul * (1 + stream))))) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    return mix(key_ + kGolden * ++counter_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint8_t bit() noexcept {
    return static_cast<std::uint8_t>((*this)() >> 63);
  }

  constexpr std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream identifiers used inside one round. Fixed so transcripts replay.
namespace stream {
inline constexpr std::uint64_t kOmegaMeasurement = 0;
inline constexpr std::uint64_t kAliceBell = 1;
inline constexpr std::uint64_t kPrBox0 = 2;
inline constexpr std::uint64_t kPrBox1 = 3;
inline constexpr std::uint64_t kDenseDecode = 4;
inline constexpr std::uint64_t kRacCoin = 5;
inline constexpr std::uint64_t kRacInputs = 6;
inline constexpr std::uint64_t kInputStates = 7;
}  // namespace stream

/// (seed, trial) pair naming one independent round.
struct RoundSeed {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  CounterRng rng(std::uint64_t stream_id) const noexcept {
    return CounterRng(seed, trial, stream_id);
  }
};

}  // namespace qrac
