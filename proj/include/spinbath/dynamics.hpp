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

#ifndef SPINBATH_DYNAMICS_HPP
#define SPINBATH_DYNAMICS_HPP

#include <vector>

#include "spinbath/spin_algebra.hpp"

namespace spinbath {

enum class Space { probe_bath, bath_only };

struct Tolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-9;
};

/// Trace-one positive semidefinite operator on either the joint probe+bath
/// space or the bath alone.
class DensityMatrix {
 public:
  DensityMatrix(Eigen::MatrixXcd data, Space space);

  static DensityMatrix maximally_mixed_bath(int n);
  /// |down_S><down_S| (x) rho_bath.
  static DensityMatrix with_probe_ground(const DensityMatrix& bath);
  static DensityMatrix from_pure(const Eigen::VectorXcd& psi, Space space);

  const Eigen::MatrixXcd& matrix() const { return data_; }
  Space space() const { return space_; }
  int num_bath_spins() const { return bath_spins_; }
  Eigen::Index dim() const { return data_.rows(); }

  /// Throws IntegrityError if any invariant is violated beyond `tol`.
  void check_integrity(const Tolerances& tol = {}) const;
  double min_eigenvalue() const;

 private:
  Eigen::MatrixXcd data_;
  Space space_;
  int bath_spins_ = 0;
};

/// exp(-i H tau) through one Hermitian eigendecomposition, reusable for any tau.
class Propagator {
 public:
  explicit Propagator(const OperatorMatrix& h);
  OperatorMatrix unitary(double tau) const;
  Eigen::Index dim() const { return vectors_.rows(); }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

/// Basis indices of n spins grouped by the number of up spins (0..n), each
/// group sorted ascending.
std::vector<std::vector<std::size_t>> magnetization_sectors(int num_spins);

/// Unitary that is block diagonal over the joint magnetization sectors.
struct BlockUnitary {
  int num_spins = 0;
  std::vector<Eigen::MatrixXcd> blocks;  // indexed by number of up spins

  static BlockUnitary identity(int num_spins);
  BlockUnitary then(const BlockUnitary& later) const;  // later * this
  OperatorMatrix dense() const;
};

/// Propagator of a magnetization-conserving generator, diagonalized sector by
/// sector. Throws ContractViolation if `h` couples different sectors.
class BlockedPropagator {
 public:
  explicit BlockedPropagator(const OperatorMatrix& h);
  BlockUnitary unitary(double tau) const;
  /// U rho U^dagger computed block by block.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho, double tau) const;
  int num_spins() const { return num_spins_; }

 private:
  int num_spins_;
  std::vector<std::vector<std::size_t>> sectors_;
  std::vector<Eigen::VectorXd> energies_;
  std::vector<Eigen::MatrixXcd> vectors_;
};

DensityMatrix evolve(const DensityMatrix& rho, const OperatorMatrix& h, double tau);
DensityMatrix evolve(const DensityMatrix& rho, const Propagator& propagator, double tau);
DensityMatrix evolve_blocked(const DensityMatrix& rho, const OperatorMatrix& h, double tau);

/// Partial trace over the probe (site 1).
DensityMatrix trace_out_probe(const DensityMatrix& rho);

/// rho -> sigma_S (x) Tr_S(rho) with sigma_S = f |down><down| + (1-f) |up><up|.
DensityMatrix reset_probe(const DensityMatrix& rho, double fidelity = 1.0);

double purity(const DensityMatrix& rho_bath);
/// <Sum_k I^z_k> / (n/2), in [-1, 1].
double polarization(const DensityMatrix& rho_bath);

/// Projects bath states onto the total-spin manifolds of a DickeDecomposition.
/// Populations are reported in the decomposition's I order (decreasing I).
class ManifoldProjector {
 public:
  explicit ManifoldProjector(const DickeDecomposition& dd);
  int num_spins() const { return n_; }
  std::vector<int> two_i_labels() const { return labels_; }
  std::vector<double> populations(const DensityMatrix& rho_bath) const;

  // Per magnetization sector u: Dicke columns restricted to the sector and
  // the manifold slot each column belongs to.
  const Eigen::MatrixXd& sector_columns(int u) const { return sector_cols_[u]; }
  const std::vector<int>& sector_slots(int u) const { return sector_slots_[u]; }

 private:
  int n_;
  std::vector<int> labels_;
  Eigen::MatrixXd full_;
  std::vector<int> column_slot_;
  std::vector<Eigen::MatrixXd> sector_cols_;
  std::vector<std::vector<int>> sector_slots_;
};

std::vector<double> manifold_populations(const DensityMatrix& rho_bath, const DickeDecomposition& dd);

/// Bath-only Kraus map obtained from "reset probe, apply joint unitary W,
/// trace out probe".
struct KrausChannel {
  std::vector<Eigen::MatrixXcd> ops;

  static KrausChannel from_joint_unitary(const OperatorMatrix& w, int n, double fidelity = 1.0);
  DensityMatrix apply(const DensityMatrix& rho_bath) const;
  /// max |Sum K^dagger K - 1|.
  double completeness_error() const;
};

/// Bath state that is block diagonal in magnetization. Reset + conserving
/// dynamics keep this form, which makes long protocol runs cheap.
class SectorState {
 public:
  static SectorState maximally_mixed(int n);
  /// Throws ArgumentError if rho carries coherences between sectors.
  static SectorState from_dense(const DensityMatrix& rho_bath, double tol = 1e-14);
  static bool is_sector_diagonal(const DensityMatrix& rho_bath, double tol = 1e-14);

  int num_spins() const { return n_; }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }
  std::vector<Eigen::MatrixXcd>& blocks() { return blocks_; }

  DensityMatrix to_dense() const;
  double trace() const;
  double purity() const;
  double polarization() const;
  std::vector<double> manifold_populations(const ManifoldProjector& projector) const;
  /// Throws IntegrityError on trace, hermiticity or positivity violations.
  void check_integrity(const Tolerances& tol = {}) const;

 private:
  int n_ = 0;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// The KrausChannel of a BlockUnitary, kept in sector blocks.
class SectorChannel {
 public:
  SectorChannel(const BlockUnitary& w, double fidelity = 1.0);
  SectorState apply(const SectorState& in) const;

 private:
  struct Term {
    int shift;                            // bath sector u -> u + shift
    std::vector<Eigen::MatrixXcd> blocks; // indexed by source sector u
  };
  int n_;
  std::vector<Term> terms_;
};

}  // namespace spinbath

#endif  // SPINBATH_DYNAMICS_HPP
