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

#include "qrac/boxes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qrac {

namespace {

void check_bit(Bit b, const char* what) {
  if (b > 1) throw std::invalid_argument(std::string(what) + " must be 0 or 1");
}

// Bob's view (m, B) and Alice's view (A, m) are both encoded as 2*first + second.
int view_index(Bit first, Bit second) { return 2 * first + second; }

RacRound run_rac(Bit a0, Bit a1, Bit w, PRBox& box, Bit coin) {
  check_bit(a0, "a0");
  check_bit(a1, "a1");
  check_bit(w, "w");

  RacRound round;
  round.a0 = a0;
  round.a1 = a1;
  round.w = w;
  round.coin = coin;

  MeteredChannel channel;
  round.alice_output = box.alice(a0 ^ a1);
  round.message = a0 ^ round.alice_output;
  channel.send_bit(Direction::kAliceToBob, round.message);

  const auto received = channel.receive(Role::kBob);
  if (!received) throw ProtocolError("racbox: Bob has no message to read");
  round.bob_box_output = box.bob(w);
  round.output = received->value ^ round.bob_box_output;
  round.transcript = channel.transcript();
  return round;
}

}  // namespace

PRBox::PRBox(Bit coin) : coin_(coin) { check_bit(coin, "PR-box coin"); }

PRBox::PRBox(CounterRng rng) : coin_(rng.bit()) {}

Bit PRBox::respond(Bit input, bool is_alice) {
  check_bit(input, "PR-box input");
  std::lock_guard<std::mutex> lock(mutex_);
  bool& used = is_alice ? alice_used_ : bob_used_;
  if (used) {
    throw ProtocolError(is_alice ? "PR-box: Alice side already used"
                                 : "PR-box: Bob side already used");
  }
  const bool other_used = is_alice ? bob_used_ : alice_used_;
  used = true;
  (is_alice ? x_ : y_) = input;
  if (!other_used) return coin_;
  return static_cast<Bit>(coin_ ^ (x_ & y_));
}

Bit PRBox::alice(Bit x) { return respond(x, true); }
Bit PRBox::bob(Bit y) { return respond(y, false); }

bool PRBox::alice_used() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return alice_used_;
}

bool PRBox::bob_used() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return bob_used_;
}

RacRound rac_round(Bit a0, Bit a1, Bit w, RoundSeed seed) {
  PRBox box(seed.rng(stream::kRacCoin));
  const Bit coin = CounterRng(seed.seed, seed.trial, stream::kRacCoin).bit();
  return run_rac(a0, a1, w, box, coin);
}

RacRound rac_round_with_coin(Bit a0, Bit a1, Bit w, Bit coin) {
  PRBox box(coin);
  return run_rac(a0, a1, w, box, coin);
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("histogram size mismatch");
  double sp = 0.0;
  double sq = 0.0;
  for (double x : p) sp += x;
  for (double x : q) sq += x;
  if (!(sp > 0.0) || !(sq > 0.0)) throw std::invalid_argument("empty histogram");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] / sp - q[i] / sq);
  return 0.5 * tv;
}

RacPrivacyReport verify_rac_privacy(int trials, std::uint64_t seed) {
  if (trials < 1000) {
    throw std::invalid_argument("verify_rac_privacy needs at least 1000 trials");
  }
  RacPrivacyReport report;
  report.trials = trials;

  // Exhaustive: correctness on all 16 cases and exact view distributions.
  // exact[0][cond] is Bob's view distribution, exact[1][cond] Alice's, with
  // cond = 4*a0 + 2*a1 + w.
  std::array<std::array<std::array<double, 4>, 8>, 2> exact{};
  for (int idx = 0; idx < 16; ++idx) {
    const Bit a0 = (idx >> 3) & 1;
    const Bit a1 = (idx >> 2) & 1;
    const Bit w = (idx >> 1) & 1;
    const Bit coin = idx & 1;
    const RacRound r = rac_round_with_coin(a0, a1, w, coin);
    if (r.output == (w == 0 ? a0 : a1)) ++report.exhaustive_correct;
    const int cond = 4 * a0 + 2 * a1 + w;
    exact[0][cond][view_index(r.message, r.bob_box_output)] += 0.5;
    exact[1][cond][view_index(r.alice_output, r.message)] += 0.5;
  }

  auto cond_of = [](Bit a0, Bit a1, Bit w) { return 4 * a0 + 2 * a1 + w; };
  for (Bit w = 0; w < 2; ++w) {
    for (Bit chosen = 0; chosen < 2; ++chosen) {
      // Vary the unchosen bit with the chosen one held fixed.
      const int c0 = w == 0 ? cond_of(chosen, 0, w) : cond_of(0, chosen, w);
      const int c1 = w == 0 ? cond_of(chosen, 1, w) : cond_of(1, chosen, w);
      report.exact_bob_tv = std::max(
          report.exact_bob_tv, tv_distance(exact[0][c0], exact[0][c1]));
    }
  }
  for (Bit a0 = 0; a0 < 2; ++a0) {
    for (Bit a1 = 0; a1 < 2; ++a1) {
      report.exact_alice_tv =
          std::max(report.exact_alice_tv, tv_distance(exact[1][cond_of(a0, a1, 0)],
                                                      exact[1][cond_of(a0, a1, 1)]));
    }
  }

  // Sampled: independent seeded rounds per condition.
  std::uint64_t trial_index = 0;
  auto histogram = [&](Bit a0, Bit a1, Bit w, bool bob_view) {
    std::array<double, 4> h{};
    for (int t = 0; t < trials; ++t) {
      const RacRound r = rac_round(a0, a1, w, RoundSeed{seed, trial_index++});
      h[static_cast<std::size_t>(bob_view ? view_index(r.message, r.bob_box_output)
                                          : view_index(r.alice_output, r.message))] += 1.0;
    }
    return h;
  };
  for (Bit w = 0; w < 2; ++w) {
    for (Bit chosen = 0; chosen < 2; ++chosen) {
      const auto h0 = w == 0 ? histogram(chosen, 0, w, true) : histogram(0, chosen, w, true);
      const auto h1 = w == 0 ? histogram(chosen, 1, w, true) : histogram(1, chosen, w, true);
      report.sampled_bob_tv = std::max(report.sampled_bob_tv, tv_distance(h0, h1));
    }
  }
  for (Bit a0 = 0; a0 < 2; ++a0) {
    for (Bit a1 = 0; a1 < 2; ++a1) {
      const auto h0 = histogram(a0, a1, 0, false);
      const auto h1 = histogram(a0, a1, 1, false);
      report.sampled_alice_tv = std::max(report.sampled_alice_tv, tv_distance(h0, h1));
    }
  }
  return report;
}

}  // namespace qrac
