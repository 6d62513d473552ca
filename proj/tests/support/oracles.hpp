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

// Independent reference computations for the tests. Nothing here calls into
// the library; everything is written out with explicit index loops.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

inline Vec vec(std::initializer_list<C> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (C x : xs) v[i++] = x;
  return v;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat projector(const Vec& v) {
  Mat m(v.size(), v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    for (Eigen::Index j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

inline Mat I2() { Mat m(2, 2); m << 1, 0, 0, 1; return m; }
inline Mat X() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat Y() { Mat m(2, 2); m << 0, C(0, -1), C(0, 1), 0; return m; }
inline Mat Z() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }
inline Mat H() { Mat m(2, 2); m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2; return m; }

/// Bell vectors written out by hand, indexed 2*bit1 + bit0 for the basis
/// (X^bit0 (x) Z^bit1)(|00> + |11>)/sqrt2.
inline Vec bell(int index) {
  const double s = kInvSqrt2;
  switch (index) {
    case 0: return vec({s, 0, 0, s});    // |00> + |11>
    case 1: return vec({0, s, s, 0});    // |10> + |01>
    case 2: return vec({s, 0, 0, -s});   // |00> - |11>
    default: return vec({0, -s, s, 0});  // |10> - |01>
  }
}

inline Vec qubit(double theta, double phi) {
  return vec({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
}

/// Reduced density matrix on the kept qubits (ascending) of an n-qubit matrix; qubit 0
/// is the most significant bit of the index.
inline Mat partial_trace(const Mat& rho, int n, const std::vector<int>& keep) {
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    bool kept = false;
    for (int k : keep) kept = kept || k == q;
    if (!kept) traced.push_back(q);
  }
  const auto place = [n](std::uint64_t bits, const std::vector<int>& qs) {
    std::uint64_t full = 0;
    for (std::size_t m = 0; m < qs.size(); ++m) {
      if ((bits >> (qs.size() - 1 - m)) & 1U) full |= std::uint64_t{1} << (n - 1 - qs[m]);
    }
    return full;
  };
  const std::uint64_t dk = std::uint64_t{1} << keep.size();
  const std::uint64_t dt = std::uint64_t{1} << traced.size();
  Mat out = Mat::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::uint64_t i = 0; i < dk; ++i)
    for (std::uint64_t j = 0; j < dk; ++j)
      for (std::uint64_t t = 0; t < dt; ++t)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            rho(static_cast<Eigen::Index>(place(i, keep) | place(t, traced)),
                static_cast<Eigen::Index>(place(j, keep) | place(t, traced)));
  return out;
}

/// Trace distance of two 2x2 Hermitian matrices from the closed-form eigenvalues.
inline double trace_distance_2x2(const Mat& a, const Mat& b) {
  const Mat d = a - b;
  const double p = d(0, 0).real();
  const double q = d(1, 1).real();
  const double r = std::abs(d(0, 1));
  const double mean = (p + q) / 2;
  const double rad = std::sqrt((p - q) * (p - q) / 4 + r * r);
  return (std::abs(mean + rad) + std::abs(mean - rad)) / 2;
}

inline double max_abs(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Total variation distance of two unnormalized histograms.
template <std::size_t N>
double tv(const std::array<double, N>& p, const std::array<double, N>& q) {
  double sp = 0, sq = 0, d = 0;
  for (std::size_t i = 0; i < N; ++i) { sp += p[i]; sq += q[i]; }
  for (std::size_t i = 0; i < N; ++i) d += std::abs(p[i] / sp - q[i] / sq);
  return d / 2;
}

}  // namespace oracle
