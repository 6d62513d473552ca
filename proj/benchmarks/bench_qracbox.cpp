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

#include <benchmark/benchmark.h>

#include <numbers>

#include "qrac/boxes.hpp"
#include "qrac/channel.hpp"
#include "qrac/harness/experiment.hpp"
#include "qrac/qracbox.hpp"

namespace {

using namespace qrac;

const StateVector& psi() {
  static const StateVector s = make_pure_qubit(1.1, 0.4);
  return s;
}
const StateVector& phi() {
  static const StateVector s = make_pure_qubit(2.3, -0.9);
  return s;
}
const StateVector& omega() {
  static const StateVector s = make_pure_qubit(std::numbers::pi / 2, 0.0);
  return s;
}

void BM_SampledRound(benchmark::State& state) {
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrac_round(psi(), phi(), omega(), RoundSeed{1, t++}));
  }
}
BENCHMARK(BM_SampledRound);

void BM_SampledRoundQubitOnly(benchmark::State& state) {
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qrac_round_qubit_only(psi(), phi(), omega(), RoundSeed{1, t++}));
  }
}
BENCHMARK(BM_SampledRoundQubitOnly);

void BM_HarnessedRound(benchmark::State& state) {
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        harness::harnessed_qrac_round(psi(), phi(), omega(), RoundSeed{1, t++}, Transport::kClassicalBits));
  }
}
BENCHMARK(BM_HarnessedRound);

void BM_EnumerateBranches(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_round(psi(), phi(), omega()));
  }
}
BENCHMARK(BM_EnumerateBranches)->Unit(benchmark::kMicrosecond);

void BM_ExactTomography(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(tomography(QracRunner()));
  }
}
BENCHMARK(BM_ExactTomography)->Unit(benchmark::kMillisecond);

void BM_SampledTomography(benchmark::State& state) {
  TomographyOptions opts;
  opts.mode = TomographyMode::kSampled;
  opts.trials = static_cast<int>(state.range(0));
  opts.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tomography(QracRunner(), opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampledTomography)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Dilation(benchmark::State& state) {
  const ChoiMatrix choi = tomography(QracRunner()).choi;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_dilation(choi));
  }
}
BENCHMARK(BM_Dilation)->Unit(benchmark::kMicrosecond);

void BM_RacRound(benchmark::State& state) {
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rac_round(1, 0, static_cast<Bit>(t & 1), RoundSeed{1, t}));
    ++t;
  }
}
BENCHMARK(BM_RacRound);

}  // namespace

BENCHMARK_MAIN();
