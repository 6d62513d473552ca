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

#include <gtest/gtest.h>

#include <array>
#include <thread>

#include "oracles.hpp"
#include "qrac/boxes.hpp"
#include "qrac/transcript.hpp"

using namespace qrac;

// ---------- transcript ----------

TEST(MeteredChannel, TalliesEqualLogAggregation) {
  MeteredChannel ch;
  ch.send_bit(Direction::kAliceToBob, 1);
  ch.send_qubit(Direction::kAliceToBob, 3);
  ch.send_bit(Direction::kBobToAlice, 0);
  ch.send_qubit(Direction::kBobToAlice, 1);
  ch.send_bit(Direction::kAliceToBob, 0);
  EXPECT_EQ(ch.transcript().totals, (Tally{2, 1, 1, 1}));
  EXPECT_TRUE(ch.transcript().consistent());
  EXPECT_EQ(to_string(ch.transcript().totals), "(2,1,1,1)");
  EXPECT_EQ(ch.pending(Role::kBob), 3U);
  EXPECT_EQ(ch.pending(Role::kAlice), 2U);
  const auto first = ch.receive(Role::kBob);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->value, 1);
  EXPECT_EQ(ch.receive(Role::kBob)->kind, MessageKind::kQubit);
  EXPECT_EQ(ch.receive(Role::kBob)->value, 0);
  EXPECT_FALSE(ch.receive(Role::kBob));
}

TEST(MeteredChannel, TamperedTranscriptIsInconsistent) {
  MeteredChannel ch;
  ch.send_bit(Direction::kAliceToBob, 1);
  RoundTranscript t = ch.transcript();
  t.totals.bits_a_to_b = 0;
  EXPECT_FALSE(t.consistent());
}

TEST(MeteredChannel, RejectsNonBitValues) {
  MeteredChannel ch;
  EXPECT_THROW(ch.send_bit(Direction::kAliceToBob, 2), ProtocolError);
}

// ---------- PR-box ----------

TEST(PRBox, LawHoldsOnEveryInputOrderAndCoin) {
  for (int coin = 0; coin < 2; ++coin) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        for (int alice_first = 0; alice_first < 2; ++alice_first) {
          PRBox box(static_cast<Bit>(coin));
          Bit a = 0, b = 0;
          if (alice_first) {
            a = box.alice(static_cast<Bit>(x));
            b = box.bob(static_cast<Bit>(y));
          } else {
            b = box.bob(static_cast<Bit>(y));
            a = box.alice(static_cast<Bit>(x));
          }
          EXPECT_EQ(a ^ b, x & y);
        }
      }
    }
  }
}

TEST(PRBox, MarginalsExactlyUniformOverCoin) {
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int alice_first = 0; alice_first < 2; ++alice_first) {
        std::array<int, 2> a_counts{}, b_counts{};
        for (int coin = 0; coin < 2; ++coin) {
          PRBox box(static_cast<Bit>(coin));
          Bit a = 0, b = 0;
          if (alice_first) {
            a = box.alice(static_cast<Bit>(x));
            b = box.bob(static_cast<Bit>(y));
          } else {
            b = box.bob(static_cast<Bit>(y));
            a = box.alice(static_cast<Bit>(x));
          }
          ++a_counts[a];
          ++b_counts[b];
        }
        EXPECT_EQ(a_counts[0], 1);
        EXPECT_EQ(b_counts[0], 1);
      }
    }
  }
}

TEST(PRBox, SampledStatistics) {
  const int n = 100000;
  int a_ones = 0, b_ones = 0, violations = 0;
  for (int t = 0; t < n; ++t) {
    const RoundSeed rs{99, static_cast<std::uint64_t>(t)};
    CounterRng in = rs.rng(stream::kRacInputs);
    const Bit x = in.bit(), y = in.bit();
    PRBox box(rs.rng(stream::kPrBox0));
    const Bit a = box.alice(x);
    const Bit b = box.bob(y);
    violations += (a ^ b) != (x & y);
    a_ones += a;
    b_ones += b;
  }
  EXPECT_EQ(violations, 0);
  EXPECT_NEAR(static_cast<double>(a_ones) / n, 0.5, 0.01);
  EXPECT_NEAR(static_cast<double>(b_ones) / n, 0.5, 0.01);
}

TEST(PRBox, OneShotAndBitChecked) {
  PRBox box(0);
  box.alice(1);
  EXPECT_TRUE(box.alice_used());
  EXPECT_FALSE(box.bob_used());
  EXPECT_THROW(box.alice(0), ProtocolError);
  box.bob(1);
  EXPECT_THROW(box.bob(1), ProtocolError);
  PRBox other(1);
  EXPECT_THROW(other.alice(2), std::invalid_argument);
  EXPECT_THROW(PRBox(static_cast<Bit>(2)), std::invalid_argument);
}

TEST(PRBox, ConcurrentSidesSatisfyLaw) {
  for (int t = 0; t < 200; ++t) {
    PRBox box(static_cast<Bit>(t & 1));
    const Bit x = (t >> 1) & 1, y = (t >> 2) & 1;
    Bit a = 0, b = 0;
    std::thread ta([&] { a = pr_alice(box, x); });
    std::thread tb([&] { b = pr_bob(box, y); });
    ta.join();
    tb.join();
    EXPECT_EQ(a ^ b, x & y);
  }
}

// ---------- classical random access code ----------

TEST(RacBox, RetrievesChosenBitInAllSixteenCases) {
  for (int idx = 0; idx < 16; ++idx) {
    const Bit a0 = (idx >> 3) & 1, a1 = (idx >> 2) & 1, w = (idx >> 1) & 1, coin = idx & 1;
    const RacRound r = rac_round_with_coin(a0, a1, w, coin);
    EXPECT_EQ(r.output, w == 0 ? a0 : a1) << idx;
    EXPECT_EQ(r.message, a0 ^ r.alice_output);
    EXPECT_EQ(r.transcript.totals, (Tally{1, 0, 0, 0}));
    EXPECT_TRUE(r.transcript.consistent());
  }
}

TEST(RacBox, SeededRoundsUseCoinStream) {
  for (int t = 0; t < 100; ++t) {
    const RoundSeed rs{3, static_cast<std::uint64_t>(t)};
    const RacRound r = rac_round(1, 0, 1, rs);
    EXPECT_EQ(r.coin, CounterRng(3, static_cast<std::uint64_t>(t), stream::kRacCoin).bit());
    EXPECT_EQ(r.output, 0);
  }
}

TEST(RacBox, ExactViewsAreIndependentOfHiddenInputs) {
  // Oracle: enumerate the coin and build both parties' view histograms.
  for (int w = 0; w < 2; ++w) {
    for (int chosen = 0; chosen < 2; ++chosen) {
      std::array<std::array<double, 4>, 2> bob{};
      for (int other = 0; other < 2; ++other) {
        for (int coin = 0; coin < 2; ++coin) {
          const Bit a0 = static_cast<Bit>(w == 0 ? chosen : other);
          const Bit a1 = static_cast<Bit>(w == 0 ? other : chosen);
          const RacRound r = rac_round_with_coin(a0, a1, static_cast<Bit>(w), static_cast<Bit>(coin));
          bob[static_cast<std::size_t>(other)][2 * r.message + r.bob_box_output] += 1;
        }
      }
      EXPECT_EQ(oracle::tv(bob[0], bob[1]), 0.0);
    }
  }
  const RacPrivacyReport rep = verify_rac_privacy(100000, 5);
  EXPECT_EQ(rep.exhaustive_correct, 16);
  EXPECT_EQ(rep.exact_bob_tv, 0.0);
  EXPECT_EQ(rep.exact_alice_tv, 0.0);
  EXPECT_LE(rep.sampled_bob_tv, 0.02);
  EXPECT_LE(rep.sampled_alice_tv, 0.02);
  EXPECT_THROW(verify_rac_privacy(999, 5), std::invalid_argument);
}

TEST(TvDistance, MatchesOracle) {
  const std::array<double, 4> p{1, 2, 3, 4}, q{4, 3, 2, 1};
  EXPECT_NEAR(tv_distance(p, q), oracle::tv(p, q), 1e-15);
  EXPECT_EQ(tv_distance(p, p), 0.0);
}
