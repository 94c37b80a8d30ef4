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

#include "spinbath/spin_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

constexpr int kMaxExactSpins = 62;

using u128 = unsigned __int128;

u128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 c = 1;
  for (int i = 0; i < k; ++i) c = c * static_cast<u128>(n - i) / static_cast<u128>(i + 1);
  return c;
}

void check_site(int site, int n_total) {
  if (n_total < 1 || n_total > 20)
    throw ArgumentError("n_total must lie in [1, 20], got " + std::to_string(n_total));
  if (site < 1 || site > n_total)
    throw ArgumentError("site " + std::to_string(site) + " out of range [1, " +
                        std::to_string(n_total) + "]");
}

double norm_of(std::span<const double> g) {
  double s = 0.0;
  for (double v : g) s += v * v;
  return std::sqrt(s);
}

}  // namespace

int count_up(std::size_t index, int num_spins) {
  return num_spins - std::popcount(index);
}

OperatorMatrix single_spin_operator(SpinOp kind, int site, int n_total, Convention convention) {
  check_site(site, n_total);
  const std::size_t dim = dim_of(n_total);
  const std::size_t mask = std::size_t{1} << (n_total - site);
  const double half = convention == Convention::pauli ? 1.0 : 0.5;
  OperatorMatrix op = OperatorMatrix::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const bool up = (col & mask) == 0;
    const std::size_t flipped = col ^ mask;
    switch (kind) {
      case SpinOp::sz:
        op(col, col) = up ? half : -half;
        break;
      case SpinOp::s_plus:
        if (!up) op(flipped, col) = 1.0;
        break;
      case SpinOp::s_minus:
        if (up) op(flipped, col) = 1.0;
        break;
      case SpinOp::sx:
        op(flipped, col) = half;
        break;
      case SpinOp::sy:
        // sy = half * [[0, -i], [i, 0]] in (up, down) order.
        op(flipped, col) = up ? Complex(0.0, half) : Complex(0.0, -half);
        break;
    }
  }
  return op;
}

OperatorMatrix total_spin_component(SpinOp kind, int n) {
  OperatorMatrix sum = OperatorMatrix::Zero(dim_of(n), dim_of(n));
  for (int k = 1; k <= n; ++k) sum += single_spin_operator(kind, k, n);
  return sum;
}

OperatorMatrix total_spin_squared(int n) {
  const OperatorMatrix iz = total_spin_component(SpinOp::sz, n);
  const OperatorMatrix ip = total_spin_component(SpinOp::s_plus, n);
  const OperatorMatrix im = total_spin_component(SpinOp::s_minus, n);
  return iz * iz + 0.5 * (ip * im + im * ip);
}

CollectiveOperator collective_lowering(std::span<const double> gx) {
  const double g_perp = norm_of(gx);
  if (gx.empty() || g_perp == 0.0)
    throw DegenerateCouplingError("collective lowering needs a nonzero transverse coupling");
  const int n = static_cast<int>(gx.size());
  CollectiveOperator out{OperatorMatrix::Zero(dim_of(n), dim_of(n)), g_perp};
  for (int k = 0; k < n; ++k) {
    if (gx[k] != 0.0) out.op += (gx[k] / g_perp) * single_spin_operator(SpinOp::s_minus, k + 1, n);
  }
  return out;
}

CollectiveOperator collective_dephasing(std::span<const double> gz) {
  const double g_par = norm_of(gz);
  if (gz.empty() || g_par == 0.0)
    throw DegenerateCouplingError("collective dephasing needs a nonzero longitudinal coupling");
  const int n = static_cast<int>(gz.size());
  const std::size_t dim = dim_of(n);
  CollectiveOperator out{OperatorMatrix::Zero(dim, dim), g_par};
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double d = 0.0;
    for (int k = 0; k < n; ++k) d += (is_up(idx, k + 1, n) ? 0.5 : -0.5) * gz[k];
    out.op(idx, idx) = d / g_par;
  }
  return out;
}

std::uint64_t dicke_multiplicity(int n, int two_i) {
  if (n < 1 || n > kMaxExactSpins)
    throw ArgumentError("dicke_multiplicity: n must lie in [1, 62]");
  if (two_i < 0 || two_i > n || (n - two_i) % 2 != 0)
    throw ArgumentError("dicke_multiplicity: 2I=" + std::to_string(two_i) +
                        " is not an allowed total spin for n=" + std::to_string(n));
  const int k = (n - two_i) / 2;
  return static_cast<std::uint64_t>(binomial(n, k) - binomial(n, k - 1));
}

std::vector<int> allowed_two_i(int n) {
  std::vector<int> out;
  for (int t = n; t >= 0; t -= 2) out.push_back(t);
  return out;
}

double closed_form_purity(int n) {
  if (n < 1 || n > kMaxExactSpins)
    throw ArgumentError("closed_form_purity: n must lie in [1, 62]");
  // Exact integer numerator, one rounding at the end.
  u128 numerator = 0;
  for (int two_i : allowed_two_i(n)) {
    const u128 width = static_cast<u128>(two_i + 1);
    numerator += static_cast<u128>(dicke_multiplicity(n, two_i)) * width * width;
  }
  return static_cast<double>(std::ldexp(static_cast<long double>(numerator), -2 * n));
}

DickeDecomposition::DickeDecomposition(int n, int max_spins) : n_(n) {
  if (n < 1) throw ArgumentError("DickeDecomposition needs n >= 1");
  if (n > max_spins)
    throw ResourceError("DickeDecomposition: n=" + std::to_string(n) + " exceeds cap " +
                        std::to_string(max_spins));

  // One spin: I = 1/2 with columns (m=-1/2, m=+1/2) = (|down>, |up>).
  Eigen::MatrixXd seed(2, 2);
  seed << 0.0, 1.0, 1.0, 0.0;
  blocks_.push_back({1, 1, seed});

  for (int k = 2; k <= n; ++k) {
    const std::size_t old_dim = dim_of(k - 1);
    std::vector<DickeBlock> next;
    for (const DickeBlock& parent : blocks_) {
      const int ti = parent.two_i;
      const double denom = ti + 1.0;
      auto col_of = [ti](int two_m) { return (two_m + ti) / 2; };

      auto couple = [&](int two_j, bool upper) {
        Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(2 * old_dim, two_j + 1);
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
          // |I+-1/2, M> from |I, M-1/2>|up> and |I, M+1/2>|down>.
          const double plus = std::sqrt((ti + two_m + 1) / (2.0 * denom));
          const double minus = std::sqrt((ti - two_m + 1) / (2.0 * denom));
          const double c_up = upper ? plus : -minus;
          const double c_down = upper ? minus : plus;
          const int col = (two_m + two_j) / 2;
          if (two_m - 1 >= -ti && two_m - 1 <= ti) {
            const auto src = parent.basis.col(col_of(two_m - 1));
            for (std::size_t s = 0; s < old_dim; ++s) basis(2 * s, col) += c_up * src(s);
          }
          if (two_m + 1 >= -ti && two_m + 1 <= ti) {
            const auto src = parent.basis.col(col_of(two_m + 1));
            for (std::size_t s = 0; s < old_dim; ++s) basis(2 * s + 1, col) += c_down * src(s);
          }
        }
        next.push_back({two_j, 0, std::move(basis)});
      };

      couple(ti + 1, true);
      if (ti > 0) couple(ti - 1, false);
    }
    std::stable_sort(next.begin(), next.end(),
                     [](const DickeBlock& a, const DickeBlock& b) { return a.two_i > b.two_i; });
    blocks_ = std::move(next);
  }

  int current = -1;
  int copy = 0;
  for (DickeBlock& b : blocks_) {
    copy = b.two_i == current ? copy + 1 : 1;
    current = b.two_i;
    b.copy = copy;
  }
}

std::uint64_t DickeDecomposition::multiplicity(int two_i) const {
  return static_cast<std::uint64_t>(std::count_if(
      blocks_.begin(), blocks_.end(), [two_i](const DickeBlock& b) { return b.two_i == two_i; }));
}

Eigen::MatrixXd DickeDecomposition::full_basis() const {
  const std::size_t dim = dim_of(n_);
  Eigen::MatrixXd out(dim, dim);
  Eigen::Index col = 0;
  for (const DickeBlock& b : blocks_) {
    out.middleCols(col, b.basis.cols()) = b.basis;
    col += b.basis.cols();
  }
  return out;
}

}  // namespace spinbath
