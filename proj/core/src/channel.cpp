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

#include "qrac/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "parallel.hpp"

namespace qrac {

namespace {

// Eigenvalues of the Choi matrix at or below this are dropped from a dilation.
constexpr double kRankCutoff = 1e-10;

// (1/sqrt d) sum_i |i>_ref |i>_sys on 2k qubits.
StateVector maximally_entangled(int k) {
  const Eigen::Index d = Eigen::Index{1} << k;
  CVector v = CVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v[i * d + i] = 1.0;
  return StateVector::normalized(2 * k, std::move(v));
}

CMatrix pure_projector(const StateVector& s) {
  return s.amplitudes() * s.amplitudes().adjoint();
}

}  // namespace

// ---------------------------------------------------------------------------

ChoiMatrix::ChoiMatrix(int input_qubits, int output_qubits, CMatrix matrix)
    : input_qubits_(input_qubits),
      output_qubits_(output_qubits),
      matrix_(std::move(matrix)) {
  if (input_qubits < 0 || output_qubits < 0) {
    throw ChannelError("negative qubit count");
  }
  const Eigen::Index d = d_in() * d_out();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw ChannelError("Choi matrix must be " + std::to_string(d) + "x" +
                       std::to_string(d));
  }
}

double ChoiMatrix::min_eigenvalue() const { return qrac::min_eigenvalue(matrix_); }

CMatrix ChoiMatrix::output_trace() const {
  const Eigen::Index din = d_in();
  const Eigen::Index dout = d_out();
  CMatrix out = CMatrix::Zero(din, din);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      for (Eigen::Index m = 0; m < dout; ++m) {
        out(i, j) += matrix_(i * dout + m, j * dout + m);
      }
    }
  }
  return out;
}

double ChoiMatrix::trace_preservation_error() const {
  return max_abs_diff(output_trace(), CMatrix::Identity(d_in(), d_in()));
}

double ChoiMatrix::trace_increase() const {
  const CMatrix t = output_trace();
  const CMatrix sym = (t + t.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff() - 1.0;
}

CMatrix ChoiMatrix::apply(const CMatrix& rho) const {
  const Eigen::Index din = d_in();
  const Eigen::Index dout = d_out();
  if (rho.rows() != din || rho.cols() != din) {
    throw ChannelError("input dimension does not match the Choi matrix");
  }
  CMatrix out = CMatrix::Zero(dout, dout);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      if (rho(i, j) == Complex(0.0)) continue;
      out += rho(i, j) * matrix_.block(i * dout, j * dout, dout, dout);
    }
  }
  return out;
}

double SubchannelSet::decomposition_error(const ChoiMatrix& total) const {
  if (parts.empty()) throw ChannelError("empty subchannel set");
  CMatrix sum = CMatrix::Zero(total.matrix().rows(), total.matrix().cols());
  for (const auto& part : parts) sum += part.matrix();
  return max_abs_diff(sum, total.matrix());
}

// ---------------------------------------------------------------------------

std::vector<LabeledOutput> QracRunner::exact(const StateVector& input,
                                             int reference_qubits) const {
  std::vector<LabeledOutput> out;
  for (auto& br : enumerate_round(input, reference_qubits, bob_input_, transport_)) {
    out.push_back(LabeledOutput{br.record.a.index(), br.probability, std::move(br.output)});
  }
  return out;
}

LabeledOutput QracRunner::sample(const StateVector& input, int reference_qubits,
                                 RoundSeed seed) const {
  QracRoundResult r = run_qrac_round(input, reference_qubits, seed, transport_, bob_input_);
  return LabeledOutput{r.record.a.index(), 1.0, std::move(r.output)};
}

TomographyResult tomography(const RoundRunner& runner,
                            const TomographyOptions& options) {
  const int k = runner.input_qubits();
  const int out_qubits = runner.output_qubits();
  const double d_in = std::ldexp(1.0, k);
  const StateVector omega = maximally_entangled(k);
  const Eigen::Index dim = Eigen::Index{1} << (k + out_qubits);

  CMatrix sum = CMatrix::Zero(dim, dim);
  int trials = 0;
  if (options.mode == TomographyMode::kBranchExact) {
    for (const auto& br : runner.exact(omega, k)) sum += br.probability * br.output.matrix();
  } else {
    if (options.trials <= 0) throw std::invalid_argument("sampled tomography needs trials > 0");
    trials = options.trials;
    const auto n = static_cast<std::size_t>(trials);
    std::vector<CMatrix> partial(detail::chunk_count(n), CMatrix::Zero(dim, dim));
    detail::parallel_for(partial.size(), [&](std::size_t c) {
      const std::size_t end = std::min(n, (c + 1) * detail::kChunk);
      for (std::size_t t = c * detail::kChunk; t < end; ++t) {
        partial[c] += runner.sample(omega, k, RoundSeed{options.seed, t}).output.matrix();
      }
    });
    for (const auto& p : partial) sum += p;
    sum /= static_cast<double>(trials);
  }
  return TomographyResult{ChoiMatrix(k, out_qubits, d_in * sum), options.mode, trials,
                          options.mode == TomographyMode::kSampled &&
                              trials < kMinTomographyTrials};
}

SubchannelSet subchannels(const RoundRunner& runner) {
  const int k = runner.input_qubits();
  const int out_qubits = runner.output_qubits();
  const double d_in = std::ldexp(1.0, k);
  const Eigen::Index dim = Eigen::Index{1} << (k + out_qubits);
  std::array<CMatrix, 4> sums;
  sums.fill(CMatrix::Zero(dim, dim));
  for (const auto& br : runner.exact(maximally_entangled(k), k)) {
    if (br.label < 0 || br.label > 3) throw ChannelError("branch has no subchannel label");
    sums[static_cast<std::size_t>(br.label)] += br.probability * br.output.matrix();
  }
  SubchannelSet set;
  for (auto& s : sums) set.parts.emplace_back(k, out_qubits, d_in * s);
  return set;
}

ChannelOutput channel_output(const RoundRunner& runner, const StateVector& input) {
  if (input.num_qubits() != runner.input_qubits()) {
    throw ChannelError("input does not match the channel's input register");
  }
  const Eigen::Index dout = Eigen::Index{1} << runner.output_qubits();
  std::array<CMatrix, 4> by_label;
  by_label.fill(CMatrix::Zero(dout, dout));
  CMatrix total = CMatrix::Zero(dout, dout);
  for (const auto& br : runner.exact(input, 0)) {
    const CMatrix weighted = br.probability * br.output.matrix();
    total += weighted;
    if (br.label >= 0 && br.label < 4) by_label[static_cast<std::size_t>(br.label)] += weighted;
  }
  return ChannelOutput{DensityMatrix(runner.output_qubits(), std::move(total)), by_label};
}

// ---------------------------------------------------------------------------

MixtureReport mixture_check(Complex alpha, Complex beta, const StateVector& psi,
                            const StateVector& phi, const RoundRunner& runner) {
  const double weight0 = std::norm(alpha);
  const double weight1 = std::norm(beta);
  if (std::abs(weight0 + weight1 - 1.0) > kAlgebraTolerance) {
    throw ChannelError("|alpha|^2 + |beta|^2 must equal 1");
  }
  CVector amps(2);
  amps << alpha, beta;
  const StateVector omega = StateVector::normalized(1, std::move(amps));
  const ChannelOutput out = channel_output(runner, tensor({psi, phi, omega}));

  MixtureReport report;
  report.output = out.total.matrix();
  report.expected = weight0 * pure_projector(psi) + weight1 * pure_projector(phi);
  report.trace_distance = trace_distance(report.output, report.expected);
  for (std::size_t a = 0; a < 4; ++a) {
    report.subchannel_distances[a] = trace_distance(out.by_label[a], report.expected / 4.0);
    report.max_subchannel_distance =
        std::max(report.max_subchannel_distance, report.subchannel_distances[a]);
  }
  report.pass = report.trace_distance <= kChannelTolerance &&
                report.max_subchannel_distance <= kChannelTolerance;
  return report;
}

// ---------------------------------------------------------------------------

double Dilation::isometry_error() const {
  const CMatrix gram = isometry.adjoint() * isometry;
  return max_abs_diff(gram, CMatrix::Identity(gram.rows(), gram.cols()));
}

CVector Dilation::apply(const CVector& input) const {
  if (input.size() != isometry.cols()) throw ChannelError("dilation input size mismatch");
  return isometry * input;
}

CMatrix Dilation::channel(const CMatrix& rho) const {
  const Eigen::Index dout = Eigen::Index{1} << output_qubits;
  const Eigen::Index r = environment_dim;
  const CMatrix full = isometry * rho * isometry.adjoint();
  CMatrix out = CMatrix::Zero(dout, dout);
  for (Eigen::Index m = 0; m < dout; ++m) {
    for (Eigen::Index n = 0; n < dout; ++n) {
      for (Eigen::Index k = 0; k < r; ++k) out(m, n) += full(m * r + k, n * r + k);
    }
  }
  return out;
}

Dilation build_dilation(const ChoiMatrix& choi) {
  const double min_eig = choi.min_eigenvalue();
  if (min_eig < -kChannelTolerance) {
    throw ChannelError("Choi matrix is not positive semidefinite (min eigenvalue " +
                       std::to_string(min_eig) + ")");
  }
  if (choi.trace_preservation_error() > kChannelTolerance) {
    throw ChannelError("Choi matrix is not trace preserving");
  }

  const CMatrix& j = choi.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver((j + j.adjoint()) / 2.0);
  const auto& values = solver.eigenvalues();
  const CMatrix& vectors = solver.eigenvectors();

  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = values.size() - 1; k >= 0; --k) {
    if (values[k] > kRankCutoff) kept.push_back(k);
  }
  if (kept.empty()) throw ChannelError("Choi matrix is zero");

  const Eigen::Index din = choi.d_in();
  const Eigen::Index dout = choi.d_out();
  const auto r = static_cast<Eigen::Index>(kept.size());
  CMatrix v = CMatrix::Zero(dout * r, din);
  for (Eigen::Index e = 0; e < r; ++e) {
    const Eigen::Index k = kept[static_cast<std::size_t>(e)];
    const double scale = std::sqrt(values[k]);
    for (Eigen::Index i = 0; i < din; ++i) {
      for (Eigen::Index m = 0; m < dout; ++m) {
        v(m * r + e, i) = scale * vectors(i * dout + m, k);
      }
    }
  }
  return Dilation{choi.input_qubits(), choi.output_qubits(), r, std::move(v)};
}

OrthogonalityReport environment_orthogonality_check(const Dilation& dilation,
                                                    const StateVector& psi,
                                                    const StateVector& phi) {
  if (dilation.input_qubits != 3 || dilation.output_qubits != 1) {
    throw ChannelError("orthogonality check needs a dilation of the (A', A'', R) -> B channel");
  }
  const Eigen::Index r = dilation.environment_dim;

  // Residual chi_w = (<target| (x) I) V |psi phi w>.
  auto residual = [&](Bit w, const StateVector& target, double& product_error) {
    const CVector out =
        dilation.apply(tensor({psi, phi, StateVector::basis(1, w)}).amplitudes());
    CVector chi = CVector::Zero(r);
    for (Eigen::Index m = 0; m < 2; ++m) {
      chi += std::conj(target[m]) * out.segment(m * r, r);
    }
    CVector product(2 * r);
    for (Eigen::Index m = 0; m < 2; ++m) product.segment(m * r, r) = target[m] * chi;
    product_error = (out - product).norm();
    return chi;
  };

  OrthogonalityReport report;
  const CVector chi0 = residual(0, psi, report.product_residual0);
  const CVector chi1 = residual(1, phi, report.product_residual1);
  const double norms = chi0.norm() * chi1.norm();
  report.overlap = norms > 0.0 ? std::abs(chi0.dot(chi1)) / norms : 0.0;
  report.input_overlap = std::abs(psi.amplitudes().dot(phi.amplitudes()));
  report.pass = report.overlap <= kOrthogonalityTolerance &&
                report.product_residual0 <= kOrthogonalityTolerance &&
                report.product_residual1 <= kOrthogonalityTolerance;
  return report;
}

// ---------------------------------------------------------------------------

NonSignalingReport verify_nonsignaling(Transport transport,
                                       const NonSignalingOptions& options) {
  if (options.mode == TomographyMode::kSampled && options.trials < 10000) {
    throw std::invalid_argument("sampled non-signaling check needs at least 10^4 trials");
  }
  std::vector<std::pair<StateVector, StateVector>> inputs = options.inputs;
  if (inputs.empty()) {
    const StateVector zero = StateVector::basis(1, 0);
    inputs.emplace_back(zero, zero);
    inputs.emplace_back(make_pure_qubit(std::numbers::pi / 2, 0.0),
                        make_pure_qubit(std::numbers::pi / 2, std::numbers::pi));
  }
  const std::array<StateVector, 3> omegas{StateVector::basis(1, 0), StateVector::basis(1, 1),
                                          make_pure_qubit(std::numbers::pi / 2, 0.0)};

  NonSignalingReport report;
  report.trials = options.trials;

  // (i) Alice's output distribution under every Bob input.
  for (const auto& [psi, phi] : inputs) {
    std::array<std::array<double, 4>, 3> dists{};
    for (std::size_t o = 0; o < omegas.size(); ++o) {
      dists[o] = alice_output_distribution(
          enumerate_round(psi, phi, omegas[o], BobClassicalInput::feed(), transport));
      for (double p : dists[o]) {
        report.exact_alice_uniformity = std::max(report.exact_alice_uniformity, std::abs(p - 0.25));
      }
    }
    report.alice_distributions.push_back(dists);
  }
  for (std::size_t x = 0; x < report.alice_distributions.size() * 3; ++x) {
    for (std::size_t y = 0; y < x; ++y) {
      const auto& dx = report.alice_distributions[x / 3][x % 3];
      const auto& dy = report.alice_distributions[y / 3][y % 3];
      report.exact_alice_tv = std::max(report.exact_alice_tv, tv_distance(dx, dy));
    }
  }

  // (ii) Bob's output when Alice's bits are withheld and b is fixed.
  const CMatrix mixed = CMatrix::Identity(2, 2) / 2.0;
  for (Bit w = 0; w < 2; ++w) {
    for (int b = 0; b < 4; ++b) {
      std::vector<CMatrix> per_input;
      for (const auto& [psi, phi] : inputs) {
        const DensityMatrix avg = branch_average(enumerate_round(
            psi, phi, omegas[w], BobClassicalInput::constant(TwoBits::from_index(b)), transport));
        report.bob_marginal_distance =
            std::max(report.bob_marginal_distance, trace_distance(avg.matrix(), mixed));
        per_input.push_back(avg.matrix());
      }
      for (std::size_t x = 1; x < per_input.size(); ++x) {
        report.bob_cross_input_distance = std::max(
            report.bob_cross_input_distance, trace_distance(per_input[x], per_input[0]));
      }
    }
  }

  // Sampled estimate of (i).
  if (options.mode == TomographyMode::kSampled) {
    const auto& [psi, phi] = inputs.front();
    std::array<std::array<double, 4>, 2> hist{};
    const auto n = static_cast<std::uint64_t>(options.trials);
    for (Bit w = 0; w < 2; ++w) {
      const StateVector input = tensor({psi, phi, omegas[w]});
      std::vector<int> labels(static_cast<std::size_t>(n));
      detail::parallel_for(labels.size(), [&](std::size_t t) {
        const RoundSeed seed{options.seed, w * n + t};
        labels[t] = run_qrac_round(input, 0, seed, transport).record.a.index();
      });
      for (int a : labels) hist[w][static_cast<std::size_t>(a)] += 1.0;
    }
    report.sampled_alice_tv = tv_distance(hist[0], hist[1]);
  }
  return report;
}

}  // namespace qrac
