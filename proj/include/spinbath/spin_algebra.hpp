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

#ifndef SPINBATH_SPIN_ALGEBRA_HPP
#define SPINBATH_SPIN_ALGEBRA_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinbath {

// Conventions
// -----------
// Product basis: site 1 is the most significant bit. Bit value 0 is spin up,
// 1 is spin down, so index 0 is |up up ... up> and the last index is the
// fully polarized |down ... down> state. In the joint probe+bath space the
// probe is site 1 and bath spin k is site k+1.
//
// Bath spins use spin-1/2 matrices (I^z eigenvalues +-1/2). The probe uses
// Pauli matrices (S^z eigenvalues +-1). Raising/lowering are the same in
// both: S+ = I+ = |up><down|.

using OperatorMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class SpinOp { sx, sy, sz, s_plus, s_minus };
enum class Convention { spin_half, pauli };

inline constexpr std::size_t dim_of(int num_spins) { return std::size_t{1} << num_spins; }

/// True if `site` (1-based) is spin up in basis state `index`.
inline bool is_up(std::size_t index, int site, int num_spins) {
  return ((index >> (num_spins - site)) & 1U) == 0;
}

/// Number of up spins in basis state `index`.
int count_up(std::size_t index, int num_spins);

/// Embeds a single-spin operator at `site` (1-based) into n_total spins.
OperatorMatrix single_spin_operator(SpinOp kind, int site, int n_total,
                                    Convention convention = Convention::spin_half);

/// Sum_k I^z_k, Sum_k I^+_k, Sum_k I^-_k (unweighted, spin-1/2).
OperatorMatrix total_spin_component(SpinOp kind, int n);

/// Total spin squared I^2 = Ix^2 + Iy^2 + Iz^2 of n spin-1/2.
OperatorMatrix total_spin_squared(int n);

struct CollectiveOperator {
  OperatorMatrix op;
  double norm = 0.0;  // g_perp or g_par
};

/// (1/g_perp) Sum_k gx_k I^-_k with g_perp = sqrt(Sum gx_k^2).
CollectiveOperator collective_lowering(std::span<const double> gx);

/// (1/g_par) Sum_k gz_k I^z_k with g_par = sqrt(Sum gz_k^2).
CollectiveOperator collective_dephasing(std::span<const double> gz);

// Total-spin bookkeeping. Half-integer spins are passed as twice their value.

/// lambda_I = C(n, n/2 - I) - C(n, n/2 - I - 1), exact for n <= 62.
std::uint64_t dicke_multiplicity(int n, int two_i);

/// Valid 2I values for n spins, in decreasing order.
std::vector<int> allowed_two_i(int n);

/// Sum_I lambda_I ((2I+1)/2^n)^2: purity left when each total-spin copy is
/// pumped into its lowest-weight state from the maximally mixed state.
double closed_form_purity(int n);

struct DickeBlock {
  int two_i = 0;
  int copy = 0;  // 1..lambda_I
  /// 2^n x (2I+1) real orthonormal columns, ordered m = -I .. +I.
  Eigen::MatrixXd basis;
};

/// Simultaneous eigenbasis of I^2 and I^z with explicit multiplicity labels,
/// built by adding one spin-1/2 at a time with Clebsch-Gordan coefficients.
class DickeDecomposition {
 public:
  static constexpr int kDefaultMaxSpins = 12;

  explicit DickeDecomposition(int n, int max_spins = kDefaultMaxSpins);

  int num_spins() const { return n_; }
  /// Ordered by decreasing I, copies in construction order.
  const std::vector<DickeBlock>& blocks() const { return blocks_; }
  std::uint64_t multiplicity(int two_i) const;
  /// All block bases side by side (2^n x 2^n).
  Eigen::MatrixXd full_basis() const;

 private:
  int n_;
  std::vector<DickeBlock> blocks_;
};

}  // namespace spinbath

#endif  // SPINBATH_SPIN_ALGEBRA_HPP
