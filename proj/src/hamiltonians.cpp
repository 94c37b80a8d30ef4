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

#include "spinbath/hamiltonians.hpp"

#include <cmath>
#include <numbers>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

constexpr int kProbeSite = 1;

std::size_t mask_of(int site, int num_spins) { return std::size_t{1} << (num_spins - site); }

// Adds coeff * (I+_a I-_b + I-_a I+_b) between joint sites a and b.
void add_exchange(OperatorMatrix& h, int site_a, int site_b, int num_spins, Complex coeff) {
  const std::size_t ma = mask_of(site_a, num_spins);
  const std::size_t mb = mask_of(site_b, num_spins);
  const auto dim = static_cast<std::size_t>(h.rows());
  for (std::size_t col = 0; col < dim; ++col) {
    const bool a_up = (col & ma) == 0;
    const bool b_up = (col & mb) == 0;
    if (a_up == b_up) continue;
    const std::size_t row = col ^ ma ^ mb;
    // a down, b up -> a up, b down is the I+_a I-_b term.
    h(row, col) += a_up ? std::conj(coeff) : coeff;
  }
}

}  // namespace

std::string_view to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::flip_flop:
      return "flip_flop";
    case HamiltonianKind::dispersive:
      return "dispersive";
    case HamiltonianKind::interacting:
      return "interacting";
    case HamiltonianKind::time_dependent_rwa:
      return "time_dependent_rwa";
  }
  return "unknown";
}

OperatorMatrix build_flip_flop(const BathSpec& spec) {
  spec.validate();
  const int total = spec.n + 1;
  OperatorMatrix h = OperatorMatrix::Zero(dim_of(total), dim_of(total));
  for (int k = 0; k < spec.n; ++k) {
    if (spec.gx[k] != 0.0) add_exchange(h, kProbeSite, k + 2, total, spec.gx[k]);
  }
  return h;
}

OperatorMatrix build_dispersive(const BathSpec& spec) {
  spec.validate();
  const int total = spec.n + 1;
  const std::size_t dim = dim_of(total);
  OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const double sz = is_up(idx, kProbeSite, total) ? 1.0 : -1.0;
    double field = 0.0;
    for (int k = 0; k < spec.n; ++k) field += (is_up(idx, k + 2, total) ? 0.5 : -0.5) * spec.gz[k];
    h(idx, idx) = sz * field;
  }
  return h;
}

OperatorMatrix build_interacting(const BathSpec& spec) {
  if (!spec.j) throw ConfigurationError("interacting Hamiltonian needs chain couplings j");
  spec.validate();
  Eigen::MatrixXd couplings = Eigen::MatrixXd::Zero(spec.n, spec.n);
  for (int b = 0; b + 1 < spec.n; ++b) couplings(b, b + 1) = (*spec.j)[b];
  return build_interacting(spec, couplings);
}

OperatorMatrix build_interacting(const BathSpec& spec, const Eigen::MatrixXd& couplings) {
  if (couplings.rows() != spec.n || couplings.cols() != spec.n)
    throw ArgumentError("coupling matrix must be n x n");
  OperatorMatrix h = build_flip_flop(spec);
  const int total = spec.n + 1;
  for (int a = 0; a < spec.n; ++a) {
    for (int b = a + 1; b < spec.n; ++b) {
      if (couplings(a, b) != 0.0) add_exchange(h, a + 2, b + 2, total, couplings(a, b));
    }
  }
  return h;
}

OperatorMatrix build_time_dependent(const BathSpec& spec, double omega0, double t) {
  spec.validate();
  if (t < 0.0) throw ArgumentError("time must be non-negative");
  const int total = spec.n + 1;
  const std::size_t dim = dim_of(total);
  const std::size_t probe = mask_of(kProbeSite, total);
  const double wl = spec.omega_larmor;
  const Complex co = std::polar(1.0, -(omega0 - wl) * t);
  const Complex counter = std::polar(1.0, -(omega0 + wl) * t);
  const Complex longitudinal = std::polar(1.0, -omega0 * t);

  OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
  for (int k = 0; k < spec.n; ++k) {
    const int site = k + 2;
    const std::size_t bath = mask_of(site, total);
    for (std::size_t col = 0; col < dim; ++col) {
      const bool probe_up = (col & probe) == 0;
      const bool bath_up = (col & bath) == 0;
      if (probe_up) continue;  // every term below is written as S+ (...) ; h.c. added after
      if (spec.gx[k] != 0.0) {
        const std::size_t row = col ^ probe ^ bath;
        // S+ I-_k when bath is up, S+ I+_k when bath is down.
        h(row, col) += spec.gx[k] * (bath_up ? co : counter);
      }
      if (spec.gz[k] != 0.0) {
        const std::size_t row = col ^ probe;
        h(row, col) += spec.gz[k] * longitudinal * (bath_up ? 0.5 : -0.5);
      }
    }
  }
  OperatorMatrix full = h + h.adjoint();
  return full;
}

OperatorMatrix build_hamiltonian(HamiltonianKind kind, const BathSpec& spec) {
  switch (kind) {
    case HamiltonianKind::flip_flop:
      return build_flip_flop(spec);
    case HamiltonianKind::dispersive:
      return build_dispersive(spec);
    case HamiltonianKind::interacting:
      return build_interacting(spec);
    case HamiltonianKind::time_dependent_rwa:
      break;
  }
  throw ArgumentError("time-dependent Hamiltonian has no static matrix");
}

OperatorMatrix joint_magnetization(int n) {
  const int total = n + 1;
  const std::size_t dim = dim_of(total);
  OperatorMatrix jz = OperatorMatrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) jz(idx, idx) = 0.5 * (2 * count_up(idx, total) - total);
  return jz;
}

OperatorMatrix time_ordered_propagator(const BathSpec& spec, double omega0, double duration,
                                       int steps_per_period) {
  if (duration < 0.0) throw ArgumentError("duration must be non-negative");
  if (steps_per_period < 1) throw ArgumentError("steps_per_period must be positive");
  const double fastest = spec.omega_larmor + std::abs(omega0);
  const double dt_max = 2.0 * std::numbers::pi / fastest / steps_per_period;
  const auto steps = static_cast<long>(std::ceil(duration / dt_max));
  const std::size_t dim = dim_of(spec.n + 1);
  OperatorMatrix u = OperatorMatrix::Identity(dim, dim);
  if (steps == 0) return u;
  const double dt = duration / static_cast<double>(steps);
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver;
  for (long s = 0; s < steps; ++s) {
    solver.compute(build_time_dependent(spec, omega0, (s + 0.5) * dt));
    const Eigen::VectorXcd phases =
        (solver.eigenvalues().cast<Complex>() * Complex(0.0, -dt)).array().exp();
    u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint() * u;
  }
  return u;
}

double hermiticity_error(const OperatorMatrix& h) {
  if (h.rows() != h.cols()) throw ArgumentError("matrix is not square");
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace spinbath
