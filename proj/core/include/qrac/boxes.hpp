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
#include <mutex>

#include "qrac/quantum.hpp"
#include "qrac/rng.hpp"
#include "qrac/transcript.hpp"

namespace qrac {

/**
 * @brief One-shot Popescu-Rohrlich box with outputs satisfying A xor B = x*y.
 *
 * Realized by a hidden uniform coin. Whichever side inputs first receives the
 * coin itself; the second side receives coin xor x*y. The first output never
 * depends on the other side's input, so the box cannot signal, and inputs may
 * arrive in either order. Each side may input exactly once.
 *
 * The two sides may be driven from different threads; each call is atomic.
 */
class PRBox {
 public:
  /// Box with an explicit hidden coin, for exhaustive enumeration.
  explicit PRBox(Bit coin);
  /// Box whose coin is the next bit of `rng`.
  explicit PRBox(CounterRng rng);

  PRBox(const PRBox&) = delete;
  PRBox& operator=(const PRBox&) = delete;

  /// Alice's input x, returns A. Throws ProtocolError on reuse.
  Bit alice(Bit x);
  /// Bob's input y, returns B. Throws ProtocolError on reuse.
  Bit bob(Bit y);

  bool alice_used() const;
  bool bob_used() const;

 private:
  Bit respond(Bit input, bool is_alice);

  mutable std::mutex mutex_;
  Bit coin_;
  bool alice_used_ = false;
  bool bob_used_ = false;
  Bit x_ = 0;
  Bit y_ = 0;
};

inline Bit pr_alice(PRBox& box, Bit x) { return box.alice(x); }
inline Bit pr_bob(PRBox& box, Bit y) { return box.bob(y); }

/// A completed round of the one-bit classical random access code.
struct RacRound {
  Bit a0 = 0;
  Bit a1 = 0;
  Bit w = 0;
  Bit coin = 0;
  Bit alice_output = 0;  // A
  Bit bob_box_output = 0;  // B
  Bit message = 0;  // m = a0 xor A, the single metered bit
  Bit output = 0;  // m xor B
  RoundTranscript transcript;
};

/// Alice feeds x = a0 xor a1 into a fresh box and sends m = a0 xor A; Bob
/// feeds y = w and outputs m xor B = a_w. The box coin comes from the
/// kRacCoin stream of `seed`.
RacRound rac_round(Bit a0, Bit a1, Bit w, RoundSeed seed);
RacRound rac_round_with_coin(Bit a0, Bit a1, Bit w, Bit coin);

struct RacPrivacyReport {
  int trials = 0;
  /// Rounds with output = a_w over all 16 (a0, a1, w, coin) cases.
  int exhaustive_correct = 0;
  /// Max TV distance of Bob's view (m, B) between the two values of the
  /// unchosen bit, by coin enumeration and by sampling.
  double exact_bob_tv = 0.0;
  double sampled_bob_tv = 0.0;
  /// Max TV distance of Alice's view (A, m) between w = 0 and w = 1.
  double exact_alice_tv = 0.0;
  double sampled_alice_tv = 0.0;
};

/// Requires trials >= 1000 (std::invalid_argument otherwise).
RacPrivacyReport verify_rac_privacy(int trials, std::uint64_t seed);

/// Total variation distance between two histograms, each normalized by its sum.
double tv_distance(std::span<const double> p, std::span<const double> q);

}  // namespace qrac
