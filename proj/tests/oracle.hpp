// Copyright 2026 The spinbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations for tests. Everything here is built from 2x2
// matrices and Kronecker products and never calls the library, so that a
// bug in the library cannot also hide in the expected value.

#ifndef SPINBATH_TESTS_ORACLE_HPP
#define SPINBATH_TESTS_ORACLE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Basis order (|up>, |down>) on every site; site 1 is leftmost.
inline Mat raising() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}
inline Mat lowering() { return raising().adjoint(); }
inline Mat half_z() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -0.5;
  return m;
}

// Operator `op` on `site` (1-based) of `total` sites.
inline Mat on_site(const Mat& op, int site, int total) {
  Mat out = Mat::Identity(1, 1);
  for (int s = 1; s <= total; ++s) out = kron(out, s == site ? op : Mat(Mat::Identity(2, 2)));
  return out;
}

// Probe at site 1 with Pauli normalization, bath at sites 2..n+1.
inline Mat flip_flop(const std::vector<double>& gx) {
  const int total = static_cast<int>(gx.size()) + 1;
  Mat h = Mat::Zero(1 << total, 1 << total);
  for (int k = 0; k < static_cast<int>(gx.size()); ++k) {
    const Mat t = on_site(raising(), 1, total) * on_site(lowering(), k + 2, total);
    h += gx[k] * (t + t.adjoint());
  }
  return h;
}

inline Mat dispersive(const std::vector<double>& gz) {
  const int total = static_cast<int>(gz.size()) + 1;
  Mat h = Mat::Zero(1 << total, 1 << total);
  const Mat sz = 2.0 * on_site(half_z(), 1, total);
  for (int k = 0; k < static_cast<int>(gz.size()); ++k) h += gz[k] * sz * on_site(half_z(), k + 2, total);
  return h;
}

inline Mat chain(const std::vector<double>& j, int n) {
  const int total = n + 1;
  Mat h = Mat::Zero(1 << total, 1 << total);
  for (int b = 0; b + 1 < n; ++b) {
    const Mat t = on_site(raising(), b + 2, total) * on_site(lowering(), b + 3, total);
    h += j[b] * (t + t.adjoint());
  }
  return h;
}

inline Mat expm_hermitian(const Mat& h, double tau) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXcd ph = (es.eigenvalues().cast<C>() * C(0.0, -tau)).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat probe_down_joint(const Mat& bath) {
  Mat down = Mat::Zero(2, 2);
  down(1, 1) = 1.0;
  return kron(down, bath);
}

inline Mat trace_probe(const Mat& joint) {
  const Eigen::Index d = joint.rows() / 2;
  return joint.topLeftCorner(d, d) + joint.bottomRightCorner(d, d);
}

// One reset-evolve-trace cycle with the probe reset to |down>.
inline Mat cycle(const Mat& bath, const Mat& u) {
  return trace_probe(u * probe_down_joint(bath) * u.adjoint());
}

inline double purity(const Mat& rho) { return (rho * rho).trace().real(); }

inline Mat total_spin_squared(int n) {
  Mat ix = Mat::Zero(1 << n, 1 << n), iy = ix, iz = ix;
  Mat sx = Mat::Zero(2, 2), sy = Mat::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 0.5;
  sy(0, 1) = C(0.0, -0.5);
  sy(1, 0) = C(0.0, 0.5);
  for (int k = 1; k <= n; ++k) {
    ix += on_site(sx, k, n);
    iy += on_site(sy, k, n);
    iz += on_site(half_z(), k, n);
  }
  return ix * ix + iy * iy + iz * iz;
}

// Number of eigenvalues of I^2 at I(I+1), keyed by 2I, from numerical
// diagonalization.
inline std::map<int, int> spin_squared_spectrum(int n) {
  Eigen::SelfAdjointEigenSolver<Mat> es(total_spin_squared(n), Eigen::EigenvaluesOnly);
  std::map<int, int> counts;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    const int two_i = static_cast<int>(std::lround(std::sqrt(1.0 + 4.0 * v) - 1.0));
    ++counts[two_i];
  }
  return counts;
}

// Purity left after each spin-I copy is pumped to its lowest-weight state,
// with multiplicities read off the numerical I^2 spectrum.
inline double pumped_purity_from_spectrum(int n) {
  double sum = 0.0;
  for (const auto& [two_i, count] : spin_squared_spectrum(n)) {
    const double width = two_i + 1;
    const double copies = count / width;
    sum += copies * width * width;
  }
  return sum / std::pow(4.0, n);
}

// Same quantity from Pascal's triangle in long double.
inline long double pumped_purity_pascal(int n) {
  std::vector<long double> row{1.0L};
  for (int k = 0; k < n; ++k) {
    std::vector<long double> next(row.size() + 1, 0.0L);
    for (std::size_t i = 0; i < row.size(); ++i) {
      next[i] += row[i];
      next[i + 1] += row[i];
    }
    row = std::move(next);
  }
  long double sum = 0.0L;
  for (int two_i = n % 2; two_i <= n; two_i += 2) {
    const int k = (n - two_i) / 2;
    const long double lam = row[k] - (k >= 1 ? row[k - 1] : 0.0L);
    sum += lam * (two_i + 1) * (two_i + 1);
  }
  return sum / std::pow(4.0L, n);
}

// Brute-force DRT stationary purity: iterate the dense channel.
inline double drt_stationary_purity(int n, double g, int cycles) {
  const std::vector<double> gx(n, g);
  const Mat u = expm_hermitian(flip_flop(gx), std::numbers::pi / (2.0 * g * std::sqrt(static_cast<double>(n))));
  Mat rho = Mat::Identity(1 << n, 1 << n) / static_cast<double>(1 << n);
  for (int c = 0; c < cycles; ++c) rho = cycle(rho, u);
  return purity(rho);
}

inline Mat random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Mat a(1 << n, 1 << n);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = C(gauss(rng), gauss(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace oracle

#endif  // SPINBATH_TESTS_ORACLE_HPP
