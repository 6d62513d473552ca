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
#include "qrac/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "qrac/boxes.hpp"
#include "qrac/channel.hpp"
#include "qrac/harness/party.hpp"
#include "../parallel.hpp"

namespace qrac::harness {
namespace {

constexpr double kRecoveryTolerance = 1e-10;
constexpr double kExactTvTolerance = 1e-12;
constexpr double kSampledTvTolerance = 0.02;
constexpr double kSampledMarginalTolerance = 0.01;
constexpr std::uint32_t kDensePayload = 0;

Budget budget_for(Transport transport) {
  return transport == Transport::kClassicalBits ? Budget::qrac() : Budget::qubit_only();
}

void enforce(const RoundTranscript& transcript, const Budget& budget, std::string_view what) {
  const MeterResult m = meter_assert(transcript, budget);
  if (!m.pass) {
    throw BudgetViolation("budget violation in " + std::string(what) + ": " + m.diff + " (" +
                          transcript_excerpt(transcript) + ")");
  }
}

// QRAC runner that meters every round it runs against the transport's budget.
class MeteredQracRunner final : public RoundRunner {
 public:
  explicit MeteredQracRunner(Transport transport) : transport_(transport) {}

  int input_qubits() const override { return 3; }
  int output_qubits() const override { return 1; }

  std::vector<LabeledOutput> exact(const StateVector& input, int refs) const override {
    std::vector<LabeledOutput> out;
    for (auto& br : enumerate_round(input, refs, BobClassicalInput::feed(), transport_)) {
      enforce(br.transcript, budget_for(transport_), "branch-exact round");
      rounds_.fetch_add(1, std::memory_order_relaxed);
      out.push_back(LabeledOutput{br.record.a.index(), br.probability, std::move(br.output)});
    }
    return out;
  }

  LabeledOutput sample(const StateVector& input, int refs, RoundSeed seed) const override {
    QracRoundResult r = run_qrac_round(input, refs, seed, transport_);
    enforce(r.transcript, budget_for(transport_), "sampled round");
    rounds_.fetch_add(1, std::memory_order_relaxed);
    return LabeledOutput{r.record.a.index(), 1.0, std::move(r.output)};
  }

  long rounds() const { return rounds_.load(); }
  Tally per_round() const { return budget_for(transport_).expected; }

 private:
  Transport transport_;
  mutable std::atomic<long> rounds_{0};
};

struct Inputs {
  StateVector psi;
  StateVector phi;
  StateVector omega;
  Complex alpha;
  Complex beta;
  std::vector<std::string> warnings;
};

Inputs parse_inputs(const ExperimentConfig& config) {
  const ParsedState psi = parse_state(config.psi);
  const ParsedState phi = parse_state(config.phi);
  const ParsedState omega = parse_state(config.omega);
  Inputs in{psi.state, phi.state, omega.state, omega.state[0], omega.state[1], {}};
  for (const auto* p : {&psi, &phi, &omega}) {
    if (p->warning) in.warnings.push_back(*p->warning);
  }
  return in;
}

nlohmann::json dist_json(const std::array<double, 4>& d) {
  return nlohmann::json::array({d[0], d[1], d[2], d[3]});
}

std::string bit_str(int b) { return std::to_string(b); }

// ---------------------------------------------------------------------------

void qrac_experiment(const ExperimentConfig& config, const Inputs& in, Transport transport,
                     Report& report) {
  const Budget budget = budget_for(transport);
  const std::uint64_t seed = *config.seed;
  report.tallies = budget.expected;
  report.csv_header = {"trial", "w", "a1", "a0", "b1", "b0", "probability", "fidelity"};

  double min_fid = 1.0;
  double sum_fid = 0.0;
  long rounds = 0;
  std::array<double, 4> a_dist{};
  std::array<double, 2> w_dist{};
  CMatrix average = CMatrix::Zero(2, 2);

  const auto record_row = [&](std::string trial, const QracRecord& rec, double p, double fid) {
    report.csv_rows.push_back({std::move(trial), bit_str(rec.w), bit_str(rec.a.bit1),
                               bit_str(rec.a.bit0), bit_str(rec.b_in.bit1), bit_str(rec.b_in.bit0),
                               format_double(p), format_double(fid)});
  };

  if (config.mode == TomographyMode::kBranchExact) {
    const auto branches = enumerate_round(in.psi, in.phi, in.omega, BobClassicalInput::feed(),
                                          transport);
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const auto& br = branches[i];
      enforce(br.transcript, budget, "branch-exact round");
      const double fid = fidelity(br.output, br.record.w == 0 ? in.psi : in.phi);
      min_fid = std::min(min_fid, fid);
      sum_fid += br.probability * fid;
      a_dist[static_cast<std::size_t>(br.record.a.index())] += br.probability;
      w_dist[br.record.w] += br.probability;
      average += br.probability * br.output.matrix();
      record_row(std::to_string(i), br.record, br.probability, fid);
      ++rounds;
    }
    const CMatrix expected = std::norm(in.alpha) * in.psi.amplitudes() * in.psi.amplitudes().adjoint() +
                             std::norm(in.beta) * in.phi.amplitudes() * in.phi.amplitudes().adjoint();
    report.add_check("mixture_trace_distance", trace_distance(average, expected),
                     kChannelTolerance);
    report.metrics["fidelity_mean"] = sum_fid;
  } else {
    const int trials = default_trials(config);
    std::vector<std::optional<QracRoundResult>> slots(static_cast<std::size_t>(trials));
    detail::parallel_for(slots.size(), [&](std::size_t t) {
      slots[t] = harnessed_qrac_round(in.psi, in.phi, in.omega,
                                      RoundSeed{seed, static_cast<std::uint64_t>(t)}, transport);
    });
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const QracRoundResult& r = *slots[t];
      enforce(r.transcript, budget, "sampled round");
      const double fid = fidelity(r.output, r.record.w == 0 ? in.psi : in.phi);
      min_fid = std::min(min_fid, fid);
      sum_fid += fid;
      a_dist[static_cast<std::size_t>(r.record.a.index())] += 1.0;
      w_dist[r.record.w] += 1.0;
      record_row(std::to_string(t), r.record, 1.0, fid);
      ++rounds;
    }
    for (auto& p : a_dist) p /= static_cast<double>(trials);
    for (auto& p : w_dist) p /= static_cast<double>(trials);
    report.metrics["fidelity_mean"] = sum_fid / static_cast<double>(trials);
  }

  report.add_check("recovery_fidelity_deficit", 1.0 - min_fid, kRecoveryTolerance);
  report.add_check("budget_violations", 0.0, 0.0);
  report.metrics["fidelity"] = min_fid;
  report.metrics["rounds"] = rounds;
  report.metrics["alice_output_distribution"] = dist_json(a_dist);
  report.metrics["w_distribution"] = nlohmann::json::array({w_dist[0], w_dist[1]});
  report.metrics["transport"] =
      transport == Transport::kClassicalBits ? "classical-bits" : "dense-coded-qubit";
}

void racbox_experiment(const ExperimentConfig& config, Report& report) {
  const std::uint64_t seed = *config.seed;
  const int trials = default_trials(config);
  report.tallies = Budget::racbox().expected;
  report.csv_header = {"a0", "a1", "w", "coin", "A", "B", "m", "output", "correct"};

  int correct = 0;
  for (int idx = 0; idx < 16; ++idx) {
    const Bit a0 = (idx >> 3) & 1;
    const Bit a1 = (idx >> 2) & 1;
    const Bit w = (idx >> 1) & 1;
    const Bit coin = idx & 1;
    const RacRound r = rac_round_with_coin(a0, a1, w, coin);
    enforce(r.transcript, Budget::racbox(), "racbox round");
    const bool ok = r.output == (w == 0 ? a0 : a1);
    correct += ok ? 1 : 0;
    report.csv_rows.push_back({bit_str(a0), bit_str(a1), bit_str(w), bit_str(coin),
                               bit_str(r.alice_output), bit_str(r.bob_box_output),
                               bit_str(r.message), bit_str(r.output), ok ? "1" : "0"});
  }

  // Sampled rounds are metered too.
  int sampled_incorrect = 0;
  for (int t = 0; t < std::min(trials, 1000); ++t) {
    const RoundSeed rs{seed, static_cast<std::uint64_t>(t)};
    CounterRng inputs = rs.rng(stream::kRacInputs);
    const RacRound r = rac_round(inputs.bit(), inputs.bit(), inputs.bit(), rs);
    enforce(r.transcript, Budget::racbox(), "racbox round");
    sampled_incorrect += r.output != (r.w == 0 ? r.a0 : r.a1) ? 1 : 0;
  }

  const RacPrivacyReport privacy = verify_rac_privacy(trials, seed);

  // PR-box law: exhaustive over coin, inputs and input order.
  int law_failures = 0;
  std::array<double, 2> a_ones{};
  std::array<double, 2> b_ones{};
  for (int idx = 0; idx < 16; ++idx) {
    const Bit coin = idx & 1;
    const Bit x = (idx >> 1) & 1;
    const Bit y = (idx >> 2) & 1;
    const bool alice_first = (idx >> 3) & 1;
    PRBox box(coin);
    Bit a = 0;
    Bit b = 0;
    if (alice_first) {
      a = box.alice(x);
      b = box.bob(y);
    } else {
      b = box.bob(y);
      a = box.alice(x);
    }
    law_failures += (a ^ b) != (x & y) ? 1 : 0;
    a_ones[alice_first] += a / 8.0;
    b_ones[alice_first] += b / 8.0;
  }
  double exact_marginal = 0.0;
  for (int o = 0; o < 2; ++o) {
    exact_marginal = std::max({exact_marginal, std::abs(a_ones[o] - 0.5), std::abs(b_ones[o] - 0.5)});
  }

  long sampled_failures = 0;
  double a_count = 0.0;
  double b_count = 0.0;
  for (int t = 0; t < trials; ++t) {
    const RoundSeed rs{seed, static_cast<std::uint64_t>(trials) + static_cast<std::uint64_t>(t)};
    CounterRng inputs = rs.rng(stream::kRacInputs);
    const Bit x = inputs.bit();
    const Bit y = inputs.bit();
    const bool alice_first = inputs.bit() != 0;
    PRBox box(rs.rng(stream::kPrBox0));
    Bit a = 0;
    Bit b = 0;
    if (alice_first) {
      a = box.alice(x);
      b = box.bob(y);
    } else {
      b = box.bob(y);
      a = box.alice(x);
    }
    sampled_failures += (a ^ b) != (x & y) ? 1 : 0;
    a_count += a;
    b_count += b;
  }
  const double sampled_marginal =
      std::max(std::abs(a_count / trials - 0.5), std::abs(b_count / trials - 0.5));

  report.add_check("rac_incorrect_cases", 16.0 - correct, 0.0);
  report.add_check("rac_incorrect_sampled", sampled_incorrect, 0.0);
  report.add_check("privacy_tv_bob_exact", privacy.exact_bob_tv, 0.0);
  report.add_check("privacy_tv_alice_exact", privacy.exact_alice_tv, 0.0);
  report.add_check("privacy_tv_bob_sampled", privacy.sampled_bob_tv, kSampledTvTolerance);
  report.add_check("privacy_tv_alice_sampled", privacy.sampled_alice_tv, kSampledTvTolerance);
  report.add_check("pr_law_failures_exact", law_failures, 0.0);
  report.add_check("pr_law_failures_sampled", static_cast<double>(sampled_failures), 0.0);
  report.add_check("pr_marginal_deviation_exact", exact_marginal, 0.0);
  report.add_check("pr_marginal_deviation_sampled", sampled_marginal, kSampledMarginalTolerance);
  report.add_check("budget_violations", 0.0, 0.0);

  report.metrics["rac_correct_cases"] = correct;
  report.metrics["rac_cases"] = 16;
  report.metrics["privacy_tv"] = std::max(privacy.exact_bob_tv, privacy.exact_alice_tv);
  report.metrics["privacy_tv_sampled"] =
      std::max(privacy.sampled_bob_tv, privacy.sampled_alice_tv);
  report.metrics["trials"] = trials;
}

void tomography_experiment(const ExperimentConfig& config, Report& report) {
  const MeteredQracRunner runner(Transport::kClassicalBits);
  report.tallies = runner.per_round();
  const int trials = config.mode == TomographyMode::kSampled ? default_trials(config) : 0;
  const TomographyResult result =
      tomography(runner, TomographyOptions{config.mode, trials, *config.seed});
  const ChoiMatrix& choi = result.choi;
  const TomographyResult exact = config.mode == TomographyMode::kBranchExact
                                     ? result
                                     : tomography(runner, TomographyOptions{});
  const SubchannelSet parts = subchannels(runner);

  // Statistical tolerance for sampled estimates.
  const double tol = config.mode == TomographyMode::kSampled
                         ? 40.0 / std::sqrt(static_cast<double>(trials))
                         : kChannelTolerance;
  report.add_check("choi_min_eigenvalue_negativity", 0.0 - choi.min_eigenvalue(), kChannelTolerance);
  report.add_check("choi_trace_preservation_error", choi.trace_preservation_error(), tol);
  report.add_check("subchannel_decomposition_error", parts.decomposition_error(exact.choi),
                   kChannelTolerance);
  double sub_negativity = 0.0;
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& p : parts.parts) {
    sub_negativity = std::max(sub_negativity, 0.0 - p.min_eigenvalue());
    weights.push_back(p.matrix().trace().real() / static_cast<double>(p.d_in()));
  }
  report.add_check("subchannel_min_eigenvalue_negativity", sub_negativity, kChannelTolerance);
  if (config.mode == TomographyMode::kSampled) {
    report.add_check("sampled_vs_exact_choi", max_abs_diff(choi.matrix(), exact.choi.matrix()), tol);
    report.add_check("undersampled", result.undersampled ? 1.0 : 0.0, 0.0);
  }
  report.metrics["choi"] = matrix_to_json(choi.matrix());
  report.metrics["choi_min_eigenvalue"] = choi.min_eigenvalue();
  report.metrics["choi_trace"] = choi.matrix().trace().real();
  report.metrics["subchannel_weights"] = weights;
  report.metrics["undersampled"] = result.undersampled;
  report.metrics["trials"] = result.trials;
  report.metrics["rounds_metered"] = runner.rounds();
  report.csv_header = {"row", "col", "re", "im"};
  for (Eigen::Index r = 0; r < choi.matrix().rows(); ++r) {
    for (Eigen::Index c = 0; c < choi.matrix().cols(); ++c) {
      report.csv_rows.push_back({std::to_string(r), std::to_string(c),
                                 format_double(choi.matrix()(r, c).real()),
                                 format_double(choi.matrix()(r, c).imag())});
    }
  }
}

void mixture_experiment(const Inputs& in, Report& report) {
  const MeteredQracRunner runner(Transport::kClassicalBits);
  report.tallies = runner.per_round();
  const MixtureReport m = mixture_check(in.alpha, in.beta, in.psi, in.phi, runner);
  report.add_check("mixture_trace_distance", m.trace_distance, kChannelTolerance);
  report.add_check("subchannel_max_trace_distance", m.max_subchannel_distance, kChannelTolerance);
  report.metrics["alpha2"] = std::norm(in.alpha);
  report.metrics["beta2"] = std::norm(in.beta);
  report.metrics["output"] = matrix_to_json(m.output);
  report.metrics["expected"] = matrix_to_json(m.expected);
  report.metrics["subchannel_trace_distances"] = dist_json(m.subchannel_distances);
  report.metrics["rounds_metered"] = runner.rounds();
  report.csv_header = {"label", "trace_distance_to_quarter_mixture"};
  for (std::size_t a = 0; a < 4; ++a) {
    report.csv_rows.push_back({std::to_string(a), format_double(m.subchannel_distances[a])});
  }
}

void nonsignaling_experiment(const ExperimentConfig& config, const Inputs& in, Report& report) {
  NonSignalingOptions options;
  options.mode = config.mode;
  options.trials = config.mode == TomographyMode::kSampled ? default_trials(config) : 0;
  options.seed = *config.seed;
  options.inputs.emplace_back(StateVector::basis(1, 0), StateVector::basis(1, 0));
  options.inputs.emplace_back(make_pure_qubit(std::numbers::pi / 2, 0.0), StateVector::basis(1, 1));
  options.inputs.emplace_back(in.psi, in.phi);
  const NonSignalingReport ns = verify_nonsignaling(Transport::kClassicalBits, options);
  report.tallies = Budget::qrac().expected;

  report.add_check("alice_tv_exact", ns.exact_alice_tv, kExactTvTolerance);
  report.add_check("alice_uniformity_exact", ns.exact_alice_uniformity, kExactTvTolerance);
  report.add_check("bob_marginal_trace_distance", ns.bob_marginal_distance, kChannelTolerance);
  report.add_check("bob_cross_input_trace_distance", ns.bob_cross_input_distance,
                   kChannelTolerance);
  if (config.mode == TomographyMode::kSampled) {
    report.add_check("alice_tv_sampled", ns.sampled_alice_tv, kSampledTvTolerance);
  }
  report.metrics["alice_tv_exact"] = ns.exact_alice_tv;
  report.metrics["bob_marginal_trace_distance"] = ns.bob_marginal_distance;
  report.metrics["alice_tv_sampled"] = ns.sampled_alice_tv;
  report.metrics["trials"] = ns.trials;
  nlohmann::json dists = nlohmann::json::array();
  report.csv_header = {"input_pair", "omega", "p_a0", "p_a1", "p_a2", "p_a3"};
  static const char* kOmegaNames[] = {"0", "1", "+"};
  for (std::size_t i = 0; i < ns.alice_distributions.size(); ++i) {
    nlohmann::json per = nlohmann::json::object();
    for (std::size_t o = 0; o < 3; ++o) {
      per[kOmegaNames[o]] = dist_json(ns.alice_distributions[i][o]);
      const auto& d = ns.alice_distributions[i][o];
      report.csv_rows.push_back({std::to_string(i), kOmegaNames[o], format_double(d[0]),
                                 format_double(d[1]), format_double(d[2]), format_double(d[3])});
    }
    dists.push_back(std::move(per));
  }
  report.metrics["alice_distributions"] = std::move(dists);
}

StateVector orthogonal_complement(const StateVector& s) {
  CVector v(2);
  v << -std::conj(s[1]), std::conj(s[0]);
  return StateVector::normalized(1, std::move(v));
}

void dilation_experiment(const ExperimentConfig& config, const Inputs& in, Report& report) {
  const MeteredQracRunner runner(Transport::kClassicalBits);
  report.tallies = runner.per_round();
  const ChoiMatrix choi = tomography(runner).choi;
  const Dilation dil = build_dilation(choi);

  // Reproduction of the channel on seeded random 3-qubit inputs and the basis.
  double reproduction = 0.0;
  for (int i = 0; i < 16; ++i) {
    StateVector input = StateVector::basis(3, static_cast<Eigen::Index>(i % 8));
    if (i >= 8) {
      CounterRng rng = RoundSeed{*config.seed, static_cast<std::uint64_t>(i)}.rng(stream::kInputStates);
      input = tensor({random_qubit(rng), random_qubit(rng), random_qubit(rng)});
    }
    const CMatrix rho = input.amplitudes() * input.amplitudes().adjoint();
    reproduction = std::max(reproduction, max_abs_diff(dil.channel(rho), choi.apply(rho)));
  }

  std::vector<std::pair<StateVector, StateVector>> pairs;
  pairs.emplace_back(in.psi, in.phi);
  pairs.emplace_back(StateVector::basis(1, 0), StateVector::basis(1, 1));
  pairs.emplace_back(StateVector::basis(1, 0), StateVector::basis(1, 0));
  pairs.emplace_back(make_pure_qubit(std::numbers::pi / 2, 0.0), StateVector::basis(1, 0));
  for (int i = 0; i < config.random_pairs; ++i) {
    CounterRng rng = RoundSeed{*config.seed, 1000 + static_cast<std::uint64_t>(i)}.rng(stream::kInputStates);
    const StateVector psi = random_qubit(rng);
    // Every fourth random pair is orthogonal.
    const StateVector phi = i % 4 == 3 ? orthogonal_complement(psi) : random_qubit(rng);
    pairs.emplace_back(psi, phi);
  }

  double max_overlap = 0.0;
  double max_residual = 0.0;
  int orthogonal = 0;
  report.csv_header = {"pair", "input_overlap", "environment_overlap", "product_residual"};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const OrthogonalityReport o = environment_orthogonality_check(dil, pairs[i].first, pairs[i].second);
    max_overlap = std::max(max_overlap, o.overlap);
    const double residual = std::max(o.product_residual0, o.product_residual1);
    max_residual = std::max(max_residual, residual);
    if (o.input_overlap < kAlgebraTolerance) ++orthogonal;
    report.csv_rows.push_back({std::to_string(i), format_double(o.input_overlap),
                               format_double(o.overlap), format_double(residual)});
  }

  report.add_check("isometry_error", dil.isometry_error(), kChannelTolerance);
  report.add_check("channel_reproduction_error", reproduction, kChannelTolerance);
  report.add_check("environment_overlap", max_overlap, kOrthogonalityTolerance);
  report.add_check("product_residual", max_residual, kOrthogonalityTolerance);
  report.metrics["environment_dim"] = static_cast<long>(dil.environment_dim);
  report.metrics["pairs"] = static_cast<long>(pairs.size());
  report.metrics["orthogonal_pairs"] = orthogonal;
  report.metrics["max_environment_overlap"] = max_overlap;
  report.metrics["rounds_metered"] = runner.rounds();
}

}  // namespace

QracRoundResult harnessed_qrac_round(const StateVector& psi, const StateVector& phi,
                                     const StateVector& omega, RoundSeed seed,
                                     Transport transport) {
  if (psi.num_qubits() != 1 || phi.num_qubits() != 1 || omega.num_qubits() != 1) {
    throw QuantumError("QRAC inputs must be single qubits");
  }
  QracResources res(seed);
  MeteredChannel channel;
  std::optional<StateVector> dense_qubit;  // travels with the qubit message
  std::optional<DensityMatrix> output;
  Bit w = 0;
  TwoBits b;

  PartyStateMachine alice(Role::kAlice, true, {
      {"bell-measure-and-query-boxes", 0, [&](const std::vector<Message>&) {
         const AliceClassicalOutput a = qrac_alice(psi, phi, res);
         if (transport == Transport::kClassicalBits) {
           return std::vector<Message>{
               {Direction::kAliceToBob, MessageKind::kClassicalBit, 0, a.bit1},
               {Direction::kAliceToBob, MessageKind::kClassicalBit, 1, a.bit0}};
         }
         DensePair pair;
         dense_qubit = dense_encode(a, pair, 0);
         return std::vector<Message>{
             {Direction::kAliceToBob, MessageKind::kQubit, kDensePayload, 0}};
       }}});

  const std::size_t expected = transport == Transport::kClassicalBits ? 2 : 1;
  PartyStateMachine bob(Role::kBob, false, {
      {"measure-choice", 0, [&](const std::vector<Message>&) {
         CounterRng rng = seed.rng(stream::kOmegaMeasurement);
         w = measure_computational(omega, 0, rng).bit;
         return std::vector<Message>{};
       }},
      {"receive", expected, [&](const std::vector<Message>& inbox) {
         if (transport == Transport::kClassicalBits) {
           if (inbox[0].kind != MessageKind::kClassicalBit || inbox[1].kind != MessageKind::kClassicalBit) {
             throw ProtocolError("Bob expected two classical bits");
           }
           b = TwoBits{inbox[0].value, inbox[1].value};
         } else {
           if (inbox[0].kind != MessageKind::kQubit || !dense_qubit) {
             throw ProtocolError("Bob expected the dense-coded qubit");
           }
           CounterRng rng = seed.rng(stream::kDenseDecode);
           b = dense_decode(*dense_qubit, rng);
         }
         return std::vector<Message>{};
       }},
      {"correct-and-output", 0, [&](const std::vector<Message>&) {
         output = qrac_bob(w, b, res);
         return std::vector<Message>{};
       }}});

  run_protocol(alice, bob, channel);
  return QracRoundResult{std::move(*output), channel.transcript(), res.record()};
}

Report run_experiment(const ExperimentConfig& config) {
  validate(config);
  const Inputs in = parse_inputs(config);
  Report report;
  report.config = to_json(config);
  switch (config.experiment) {
    case Experiment::kQrac:
      qrac_experiment(config, in, Transport::kClassicalBits, report);
      break;
    case Experiment::kQracQubitOnly:
      qrac_experiment(config, in, Transport::kDenseCodedQubit, report);
      break;
    case Experiment::kRacbox:
      racbox_experiment(config, report);
      break;
    case Experiment::kTomography:
      tomography_experiment(config, report);
      break;
    case Experiment::kMixture:
      mixture_experiment(in, report);
      break;
    case Experiment::kNonsignaling:
      nonsignaling_experiment(config, in, report);
      break;
    case Experiment::kDilation:
      dilation_experiment(config, in, report);
      break;
  }
  report.metrics["warnings"] = in.warnings;
  return report;
}

}  // namespace qrac::harness
