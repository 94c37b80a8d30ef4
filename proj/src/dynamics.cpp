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

#include "spinbath/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "spinbath/errors.hpp"
#include "spinbath/hamiltonians.hpp"

namespace spinbath {

namespace {

int log2_dim(Eigen::Index dim) {
  if (dim < 1 || !std::has_single_bit(static_cast<std::size_t>(dim)))
    throw ArgumentError("dimension " + std::to_string(dim) + " is not a power of two");
  return std::countr_zero(static_cast<std::size_t>(dim));
}

Eigen::MatrixXcd phase_evolve(const Eigen::VectorXd& energies, const Eigen::MatrixXcd& vectors,
                              double tau) {
  const Eigen::VectorXcd phases =
      (energies.cast<Complex>() * Complex(0.0, -tau)).array().exp();
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

void require_bath(const DensityMatrix& rho, const char* what) {
  if (rho.space() != Space::bath_only)
    throw ArgumentError(std::string(what) + " expects a bath-only state");
}

// Smallest eigenvalue of the Hermitian part.
double min_eig(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::size_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t c = 1;
  for (int i = 0; i < k; ++i) c = c * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
  return c;
}

}  // namespace

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Eigen::MatrixXcd data, Space space)
    : data_(std::move(data)), space_(space) {
  if (data_.rows() != data_.cols()) throw ArgumentError("density matrix must be square");
  const int spins = log2_dim(data_.rows());
  bath_spins_ = space_ == Space::probe_bath ? spins - 1 : spins;
  if (bath_spins_ < 1) throw ArgumentError("density matrix must describe at least one bath spin");
}

DensityMatrix DensityMatrix::maximally_mixed_bath(int n) {
  if (n < 1) throw ArgumentError("bath size must be >= 1");
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  return {Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim), Space::bath_only};
}

DensityMatrix DensityMatrix::with_probe_ground(const DensityMatrix& bath) {
  require_bath(bath, "with_probe_ground");
  const Eigen::Index d = bath.dim();
  Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  joint.bottomRightCorner(d, d) = bath.matrix();
  return {std::move(joint), Space::probe_bath};
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& psi, Space space) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ArgumentError("state vector is not normalized");
  return {psi * psi.adjoint(), space};
}

double DensityMatrix::min_eigenvalue() const { return min_eig(data_); }

void DensityMatrix::check_integrity(const Tolerances& tol) const {
  const double herm = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity)
    throw IntegrityError("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  const double tr_err = std::abs(data_.trace() - Complex(1.0, 0.0));
  if (tr_err > tol.trace)
    throw IntegrityError("density matrix trace deviates from 1 by " + std::to_string(tr_err));
  const double lo = min_eigenvalue();
  if (lo < tol.min_eigenvalue)
    throw IntegrityError("density matrix has eigenvalue " + std::to_string(lo));
}

// ------------------------------------------------------------------ Propagators

Propagator::Propagator(const OperatorMatrix& h) {
  if (h.rows() != h.cols()) throw ArgumentError("Hamiltonian must be square");
  if (hermiticity_error(h) > 1e-10) throw ArgumentError("Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

OperatorMatrix Propagator::unitary(double tau) const { return phase_evolve(energies_, vectors_, tau); }

std::vector<std::vector<std::size_t>> magnetization_sectors(int num_spins) {
  std::vector<std::vector<std::size_t>> sectors(num_spins + 1);
  for (std::size_t idx = 0; idx < dim_of(num_spins); ++idx)
    sectors[count_up(idx, num_spins)].push_back(idx);
  return sectors;
}

BlockUnitary BlockUnitary::identity(int num_spins) {
  BlockUnitary out;
  out.num_spins = num_spins;
  for (int u = 0; u <= num_spins; ++u) {
    const auto d = static_cast<Eigen::Index>(binom(num_spins, u));
    out.blocks.push_back(Eigen::MatrixXcd::Identity(d, d));
  }
  return out;
}

BlockUnitary BlockUnitary::then(const BlockUnitary& later) const {
  if (later.num_spins != num_spins) throw ArgumentError("block unitaries act on different spaces");
  BlockUnitary out;
  out.num_spins = num_spins;
  out.blocks.reserve(blocks.size());
  for (std::size_t c = 0; c < blocks.size(); ++c) out.blocks.push_back(later.blocks[c] * blocks[c]);
  return out;
}

OperatorMatrix BlockUnitary::dense() const {
  const auto dim = static_cast<Eigen::Index>(dim_of(num_spins));
  OperatorMatrix out = OperatorMatrix::Zero(dim, dim);
  const auto sectors = magnetization_sectors(num_spins);
  for (std::size_t c = 0; c < sectors.size(); ++c) out(sectors[c], sectors[c]) = blocks[c];
  return out;
}

BlockedPropagator::BlockedPropagator(const OperatorMatrix& h)
    : num_spins_(log2_dim(h.rows())), sectors_(magnetization_sectors(num_spins_)) {
  if (h.rows() != h.cols()) throw ArgumentError("Hamiltonian must be square");
  if (hermiticity_error(h) > 1e-10) throw ArgumentError("Hamiltonian is not Hermitian");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  for (Eigen::Index c = 0; c < h.cols(); ++c) {
    const int uc = count_up(static_cast<std::size_t>(c), num_spins_);
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      if (std::abs(h(r, c)) > 1e-13 * scale && count_up(static_cast<std::size_t>(r), num_spins_) != uc)
        throw ContractViolation("generator does not conserve total magnetization");
    }
  }
  for (const auto& idx : sectors_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h(idx, idx));
    energies_.push_back(solver.eigenvalues());
    vectors_.push_back(solver.eigenvectors());
  }
}

BlockUnitary BlockedPropagator::unitary(double tau) const {
  BlockUnitary out;
  out.num_spins = num_spins_;
  for (std::size_t c = 0; c < sectors_.size(); ++c)
    out.blocks.push_back(phase_evolve(energies_[c], vectors_[c], tau));
  return out;
}

Eigen::MatrixXcd BlockedPropagator::apply(const Eigen::MatrixXcd& rho, double tau) const {
  if (rho.rows() != static_cast<Eigen::Index>(dim_of(num_spins_)))
    throw ArgumentError("state and generator dimensions differ");
  const BlockUnitary u = unitary(tau);
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < sectors_.size(); ++a) {
    for (std::size_t b = 0; b < sectors_.size(); ++b) {
      out(sectors_[a], sectors_[b]) =
          u.blocks[a] * rho(sectors_[a], sectors_[b]) * u.blocks[b].adjoint();
    }
  }
  return out;
}

DensityMatrix evolve(const DensityMatrix& rho, const Propagator& propagator, double tau) {
  if (propagator.dim() != rho.dim()) throw ArgumentError("state and generator dimensions differ");
  const OperatorMatrix u = propagator.unitary(tau);
  return {u * rho.matrix() * u.adjoint(), rho.space()};
}

DensityMatrix evolve(const DensityMatrix& rho, const OperatorMatrix& h, double tau) {
  if (h.rows() != rho.dim()) throw ArgumentError("state and generator dimensions differ");
  return evolve(rho, Propagator(h), tau);
}

DensityMatrix evolve_blocked(const DensityMatrix& rho, const OperatorMatrix& h, double tau) {
  if (h.rows() != rho.dim()) throw ArgumentError("state and generator dimensions differ");
  return {BlockedPropagator(h).apply(rho.matrix(), tau), rho.space()};
}

// ---------------------------------------------------------------- probe channel

DensityMatrix trace_out_probe(const DensityMatrix& rho) {
  if (rho.space() != Space::probe_bath) throw ArgumentError("trace_out_probe expects a probe+bath state");
  const Eigen::Index d = rho.dim() / 2;
  return {rho.matrix().topLeftCorner(d, d) + rho.matrix().bottomRightCorner(d, d), Space::bath_only};
}

DensityMatrix reset_probe(const DensityMatrix& rho, double fidelity) {
  if (rho.space() != Space::probe_bath) throw ArgumentError("reset_probe expects a probe+bath state");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ArgumentError("reset fidelity must lie in [0, 1]");
  const DensityMatrix bath = trace_out_probe(rho);
  const Eigen::Index d = bath.dim();
  Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  joint.topLeftCorner(d, d) = (1.0 - fidelity) * bath.matrix();
  joint.bottomRightCorner(d, d) = fidelity * bath.matrix();
  return {std::move(joint), Space::probe_bath};
}

// ------------------------------------------------------------------ observables

double purity(const DensityMatrix& rho_bath) {
  require_bath(rho_bath, "purity");
  return rho_bath.matrix().cwiseAbs2().sum();
}

double polarization(const DensityMatrix& rho_bath) {
  require_bath(rho_bath, "polarization");
  const int n = rho_bath.num_bath_spins();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rho_bath.dim(); ++i)
    acc += rho_bath.matrix()(i, i).real() * (count_up(static_cast<std::size_t>(i), n) - 0.5 * n);
  return acc / (0.5 * n);
}

ManifoldProjector::ManifoldProjector(const DickeDecomposition& dd)
    : n_(dd.num_spins()), labels_(allowed_two_i(dd.num_spins())), full_(dd.full_basis()) {
  sector_cols_.resize(n_ + 1);
  sector_slots_.resize(n_ + 1);
  const auto sectors = magnetization_sectors(n_);
  std::vector<std::vector<Eigen::Index>> picked(n_ + 1);
  Eigen::Index col = 0;
  for (const DickeBlock& b : dd.blocks()) {
    const auto slot = static_cast<int>(
        std::find(labels_.begin(), labels_.end(), b.two_i) - labels_.begin());
    for (Eigen::Index j = 0; j < b.basis.cols(); ++j, ++col) {
      column_slot_.push_back(slot);
      const auto u = static_cast<int>((2 * j - b.two_i + n_) / 2);
      picked[u].push_back(col);
      sector_slots_[u].push_back(slot);
    }
  }
  for (int u = 0; u <= n_; ++u) sector_cols_[u] = full_(sectors[u], picked[u]);
}

std::vector<double> ManifoldProjector::populations(const DensityMatrix& rho_bath) const {
  require_bath(rho_bath, "manifold_populations");
  if (rho_bath.num_bath_spins() != n_) throw ArgumentError("decomposition does not match bath size");
  std::vector<double> p(labels_.size(), 0.0);
  const Eigen::MatrixXcd proj = full_.transpose().cast<Complex>() * rho_bath.matrix();
  for (Eigen::Index c = 0; c < full_.cols(); ++c)
    p[column_slot_[c]] += (proj.row(c) * full_.col(c).cast<Complex>()).value().real();
  return p;
}

std::vector<double> manifold_populations(const DensityMatrix& rho_bath, const DickeDecomposition& dd) {
  return ManifoldProjector(dd).populations(rho_bath);
}

// ---------------------------------------------------------------- Kraus channel

KrausChannel KrausChannel::from_joint_unitary(const OperatorMatrix& w, int n, double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ArgumentError("reset fidelity must lie in [0, 1]");
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  if (w.rows() != 2 * d || w.cols() != 2 * d) throw ArgumentError("unitary does not match bath size");
  KrausChannel ch;
  // Probe up occupies the first half of the joint index range.
  if (fidelity > 0.0) {
    const double a = std::sqrt(fidelity);
    ch.ops.push_back(a * w.bottomRightCorner(d, d));
    ch.ops.push_back(a * w.topRightCorner(d, d));
  }
  if (fidelity < 1.0) {
    const double b = std::sqrt(1.0 - fidelity);
    ch.ops.push_back(b * w.bottomLeftCorner(d, d));
    ch.ops.push_back(b * w.topLeftCorner(d, d));
  }
  return ch;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho_bath) const {
  require_bath(rho_bath, "KrausChannel::apply");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho_bath.dim(), rho_bath.dim());
  for (const auto& k : ops) {
    if (k.cols() != rho_bath.dim()) throw ArgumentError("Kraus operator does not match state");
    out.noalias() += k * rho_bath.matrix() * k.adjoint();
  }
  return {std::move(out), Space::bath_only};
}

double KrausChannel::completeness_error() const {
  if (ops.empty()) return 1.0;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(ops.front().cols(), ops.front().cols());
  for (const auto& k : ops) acc += k.adjoint() * k;
  return (acc - Eigen::MatrixXcd::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff();
}

// ------------------------------------------------------------------ SectorState

SectorState SectorState::maximally_mixed(int n) {
  if (n < 1) throw ArgumentError("bath size must be >= 1");
  SectorState s;
  s.n_ = n;
  const double w = 1.0 / static_cast<double>(dim_of(n));
  for (int u = 0; u <= n; ++u) {
    const auto d = static_cast<Eigen::Index>(binom(n, u));
    s.blocks_.push_back(Eigen::MatrixXcd::Identity(d, d) * w);
  }
  return s;
}

bool SectorState::is_sector_diagonal(const DensityMatrix& rho_bath, double tol) {
  const int n = rho_bath.num_bath_spins();
  const auto& m = rho_bath.matrix();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const int uc = count_up(static_cast<std::size_t>(c), n);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) > tol && count_up(static_cast<std::size_t>(r), n) != uc) return false;
    }
  }
  return true;
}

SectorState SectorState::from_dense(const DensityMatrix& rho_bath, double tol) {
  require_bath(rho_bath, "SectorState::from_dense");
  if (!is_sector_diagonal(rho_bath, tol))
    throw ArgumentError("state has coherences between magnetization sectors");
  SectorState s;
  s.n_ = rho_bath.num_bath_spins();
  for (const auto& idx : magnetization_sectors(s.n_)) s.blocks_.push_back(rho_bath.matrix()(idx, idx));
  return s;
}

DensityMatrix SectorState::to_dense() const {
  const auto dim = static_cast<Eigen::Index>(dim_of(n_));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const auto sectors = magnetization_sectors(n_);
  for (int u = 0; u <= n_; ++u) m(sectors[u], sectors[u]) = blocks_[u];
  return {std::move(m), Space::bath_only};
}

double SectorState::trace() const {
  double t = 0.0;
  for (const auto& b : blocks_) t += b.trace().real();
  return t;
}

double SectorState::purity() const {
  double p = 0.0;
  for (const auto& b : blocks_) p += b.cwiseAbs2().sum();
  return p;
}

double SectorState::polarization() const {
  double acc = 0.0;
  for (int u = 0; u <= n_; ++u) acc += blocks_[u].trace().real() * (u - 0.5 * n_);
  return acc / (0.5 * n_);
}

std::vector<double> SectorState::manifold_populations(const ManifoldProjector& projector) const {
  if (projector.num_spins() != n_) throw ArgumentError("decomposition does not match bath size");
  std::vector<double> p(projector.two_i_labels().size(), 0.0);
  for (int u = 0; u <= n_; ++u) {
    const Eigen::MatrixXcd cols = projector.sector_columns(u).cast<Complex>();
    const Eigen::MatrixXcd rc = blocks_[u] * cols;
    const auto& slots = projector.sector_slots(u);
    for (Eigen::Index c = 0; c < cols.cols(); ++c)
      p[slots[c]] += cols.col(c).dot(rc.col(c)).real();
  }
  return p;
}

void SectorState::check_integrity(const Tolerances& tol) const {
  double tr = 0.0;
  double imag_tr = 0.0;
  for (const auto& b : blocks_) {
    if (b.rows() == 0) continue;
    const double herm = (b - b.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.hermiticity)
      throw IntegrityError("bath state not Hermitian (deviation " + std::to_string(herm) + ")");
    tr += b.trace().real();
    imag_tr += b.trace().imag();
    // Cholesky of rho + |tol| 1 fails exactly when an eigenvalue is below tol.
    const Eigen::MatrixXcd shifted =
        0.5 * (b + b.adjoint()) -
        tol.min_eigenvalue * Eigen::MatrixXcd::Identity(b.rows(), b.cols());
    Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
    if (llt.info() != Eigen::Success)
      throw IntegrityError("bath state has eigenvalue " + std::to_string(min_eig(b)));
  }
  if (std::abs(tr - 1.0) > tol.trace || std::abs(imag_tr) > tol.trace)
    throw IntegrityError("bath state trace deviates from 1 by " + std::to_string(std::abs(tr - 1.0)));
}

// ---------------------------------------------------------------- SectorChannel

SectorChannel::SectorChannel(const BlockUnitary& w, double fidelity) : n_(w.num_spins - 1) {
  if (n_ < 1) throw ArgumentError("joint unitary must include at least one bath spin");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ArgumentError("reset fidelity must lie in [0, 1]");
  // Joint sector c holds probe-up states (bath sector c-1) first, then
  // probe-down states (bath sector c).
  auto up_part = [this](int c) { return static_cast<Eigen::Index>(binom(n_, c - 1)); };
  auto down_part = [this](int c) { return static_cast<Eigen::Index>(binom(n_, c)); };

  if (fidelity > 0.0) {
    const double a = std::sqrt(fidelity);
    Term stay{0, {}};
    Term lower{-1, {}};
    for (int u = 0; u <= n_; ++u) {
      const auto& wc = w.blocks[u];
      stay.blocks.push_back(a * wc.bottomRightCorner(down_part(u), down_part(u)));
      lower.blocks.push_back(a * wc.topRightCorner(up_part(u), down_part(u)));
    }
    terms_.push_back(std::move(stay));
    terms_.push_back(std::move(lower));
  }
  if (fidelity < 1.0) {
    const double b = std::sqrt(1.0 - fidelity);
    Term raise{+1, {}};
    Term stay{0, {}};
    for (int u = 0; u <= n_; ++u) {
      const auto& wc = w.blocks[u + 1];
      raise.blocks.push_back(b * wc.bottomLeftCorner(down_part(u + 1), up_part(u + 1)));
      stay.blocks.push_back(b * wc.topLeftCorner(up_part(u + 1), up_part(u + 1)));
    }
    terms_.push_back(std::move(raise));
    terms_.push_back(std::move(stay));
  }
}

SectorState SectorChannel::apply(const SectorState& in) const {
  if (in.num_spins() != n_) throw ArgumentError("channel and state act on different baths");
  SectorState out = in;
  for (auto& b : out.blocks()) b.setZero();
  for (const Term& t : terms_) {
    for (int u = 0; u <= n_; ++u) {
      const int target = u + t.shift;
      const auto& k = t.blocks[u];
      if (target < 0 || target > n_ || k.rows() == 0 || k.cols() == 0) continue;
      out.blocks()[target].noalias() += k * in.blocks()[u] * k.adjoint();
    }
  }
  return out;
}

}  // namespace spinbath
