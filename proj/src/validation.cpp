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

#include "spinbath/validation.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "spinbath/dynamics.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/experiments.hpp"
#include "spinbath/hamiltonians.hpp"
#include "spinbath/lindblad.hpp"
#include "spinbath/protocols.hpp"
#include "spinbath/random.hpp"
#include "spinbath/spin_algebra.hpp"

namespace spinbath {

namespace {

Eigen::MatrixXcd random_matrix(Eigen::Index dim, SeededRng& rng) {
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  }
  return m;
}

DensityMatrix random_state(int n, SeededRng& rng) {
  const Eigen::MatrixXcd a = random_matrix(static_cast<Eigen::Index>(dim_of(n)), rng);
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho, Space::bath_only);
}

BathSpec random_spec(int n, SeededRng& rng, bool with_chain) {
  BathSpec spec;
  spec.n = n;
  for (int k = 0; k < n; ++k) {
    spec.gx.push_back(0.2 + rng.uniform());
    spec.gz.push_back(2.0 * rng.uniform() - 1.0);
  }
  if (with_chain) {
    std::vector<double> j;
    for (int k = 0; k + 1 < n; ++k) j.push_back(2.0 * rng.uniform() - 1.0);
    spec.j = std::move(j);
  }
  return spec;
}

double unitarity_error(const OperatorMatrix& u) {
  return (u.adjoint() * u - OperatorMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

CheckResult at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, std::move(detail)};
}

CheckResult unitarity() {
  SeededRng rng(11);
  const BathSpec spec = random_spec(4, rng, true);
  double worst = 0.0;
  for (HamiltonianKind kind : {HamiltonianKind::flip_flop, HamiltonianKind::dispersive, HamiltonianKind::interacting}) {
    const BlockedPropagator prop(build_hamiltonian(kind, spec));
    worst = std::max(worst, unitarity_error(prop.unitary(0.1 + 5.0 * rng.uniform()).dense()));
  }
  return at_most("unitarity of evolution operators", worst, 1e-10, "n=4, all static generators");
}

CheckResult trace_over_cycles() {
  SeededRng rng(12);
  const int n = 3;
  const auto dim = static_cast<Eigen::Index>(dim_of(n + 1));
  const Eigen::MatrixXcd a = random_matrix(dim, rng);
  const Propagator prop(0.5 * (a + a.adjoint()));
  const KrausChannel ch = KrausChannel::from_joint_unitary(prop.unitary(1.0), n, 0.9);
  DensityMatrix rho = random_state(n, rng);
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    rho = ch.apply(rho);
    worst = std::max(worst, std::abs(rho.matrix().trace() - Complex(1.0, 0.0)));
  }
  rho.check_integrity();
  return at_most("trace preservation over 1000 channel cycles", worst, 1e-9, "n=3, random joint unitary");
}

CheckResult commutator() {
  SeededRng rng(13);
  const BathSpec spec = random_spec(4, rng, true);
  const OperatorMatrix jz = joint_magnetization(spec.n);
  double worst = 0.0;
  for (const OperatorMatrix& h : {build_flip_flop(spec), build_interacting(spec)})
    worst = std::max(worst, (h * jz - jz * h).cwiseAbs().maxCoeff());
  return at_most("[H_res, J_z] = 0", worst, 1e-12, "n=4, with and without chain");
}

CheckResult multiplicity_sum() {
  int bad = 0;
  for (int n = 1; n <= 40; ++n) {
    unsigned __int128 sum = 0;
    for (int two_i : allowed_two_i(n)) sum += static_cast<unsigned __int128>(dicke_multiplicity(n, two_i)) * (two_i + 1);
    if (sum != (static_cast<unsigned __int128>(1) << n)) ++bad;
  }
  return at_most("Sum lambda_I (2I+1) = 2^n", bad, 0, "n = 1..40, exact integers");
}

CheckResult manifold_drift() {
  const BathSpec spec = make_uniform_spec(4, 1.0);
  RunOptions opt;
  SeededRng rng(14);
  opt.initial = random_state(4, rng);
  const RunRecord rec = run(make_drt(spec, 0.37, 100), spec, opt);
  double worst = 0.0;
  for (const RunRow& row : rec.rows) {
    worst = std::max(worst, max_abs_diff(row.manifold_populations, rec.rows.front().manifold_populations));
  }
  return at_most("equal-coupling DRT manifold populations conserved", worst, 1e-10, "n=4, 100 cycles");
}

CheckResult adrt_equals_drt() {
  BathSpec spec;
  spec.n = 4;
  spec.gx.assign(4, 0.6);
  spec.gz.assign(4, 0.8);
  const double tau_res = default_tau_res(spec);
  const RunRecord drt = run(make_drt(spec, tau_res, 100), spec);
  const RunRecord adrt = run(make_adrt(spec, tau_res, default_tau_disp(spec), 100), spec);
  double worst = 0.0;
  for (std::size_t i = 0; i < drt.rows.size(); ++i) worst = std::max(worst, std::abs(drt.rows[i].purity - adrt.rows[i].purity));
  return at_most("ADRT = DRT purity for equal gx and gz", worst, 1e-6, "n=4, 100 cycles");
}

CheckResult closed_form_small() {
  double worst = 0.0;
  for (int n : {2, 4}) {
    const BathSpec spec = make_uniform_spec(n, 1.0);
    const RunRecord rec = run(make_drt(spec, default_tau_res(spec), 400), spec);
    worst = std::max(worst, std::abs(rec.rows.back().purity - closed_form_purity(n)));
  }
  return at_most("DRT stationary purity = closed form", worst, 1e-3, "n = 2, 4");
}

CheckResult blocked_vs_dense() {
  SeededRng rng(15);
  double worst = 0.0;
  for (int trial = 0; trial < 2; ++trial) {
    const BathSpec spec = random_spec(6, rng, true);
    const DensityMatrix bath = random_state(6, rng);
    const DensityMatrix joint = DensityMatrix::with_probe_ground(bath);
    for (const OperatorMatrix& h : {build_flip_flop(spec), build_interacting(spec)}) {
      const double tau = 0.2 + 2.0 * rng.uniform();
      worst = std::max(worst, (evolve_blocked(joint, h, tau).matrix() - evolve(joint, h, tau).matrix()).cwiseAbs().maxCoeff());
    }
  }
  return at_most("blocked evolution = dense evolution", worst, 1e-10, "n=6, random specs");
}

CheckResult lindblad_structure() {
  SeededRng rng(16);
  const BathSpec spec = random_spec(3, rng, false);
  const DensityMatrix rho = random_state(3, rng);
  const Eigen::MatrixXcd h = random_matrix(8, rng);
  const Eigen::MatrixXcd out =
      lindblad_rhs(rho.matrix(), 0.5 * (h + h.adjoint()), {resonant_dissipator(spec), dispersive_dissipator(spec)});
  const double err = std::max(std::abs(out.trace()), (out - out.adjoint()).cwiseAbs().maxCoeff());
  return at_most("master-equation generator traceless and Hermitian", err, 1e-12, "n=3, random state");
}

CheckResult lindblad_dark_state() {
  BathSpec spec;
  spec.n = 3;
  spec.gx = {0.3, 0.5, 0.9};
  spec.gz = {-0.4, 0.2, 0.7};
  Eigen::VectorXcd down = Eigen::VectorXcd::Zero(8);
  down(7) = 1.0;
  const DensityMatrix rho = DensityMatrix::from_pure(down, Space::bath_only);
  const Eigen::MatrixXcd out = lindblad_rhs(rho.matrix(), {}, {resonant_dissipator(spec), dispersive_dissipator(spec)});
  return at_most("fully polarized state stationary under both dissipators", out.norm(), 1e-12, "n=3");
}

CheckResult rwa_swap() {
  BathSpec spec;
  spec.n = 1;
  spec.omega_larmor = 1.0;
  spec.gx = {1e-2};
  spec.gz = {0.0};
  const OperatorMatrix u = time_ordered_propagator(spec, spec.omega_larmor, default_tau_res(spec));
  // |down_S, up_B> -> |up_S, down_B>.
  const double transfer = std::norm(u(1, 2));
  return at_least("RWA swap population transfer", transfer, 0.95, "n=1, g/omega_L = 1e-2");
}

CheckResult sampling_bound() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const BathSpec spec = sample_couplings(8, 1.0, 1e-2, seed);
    for (int k = 0; k < spec.n; ++k) worst = std::max(worst, std::hypot(spec.gx[k], spec.gz[k]));
  }
  return at_most("sampled |g| within range", worst, 1e-2, "50 seeds, n=8");
}

}  // namespace

bool ValidationReport::passed() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e (bound %.1e)", c.value, c.threshold);
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  " << buf;
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << '\n';
  }
  return os.str();
}

ValidationReport validate() {
  const std::vector<std::pair<const char*, std::function<CheckResult()>>> suite{
      {"unitarity", unitarity},
      {"trace", trace_over_cycles},
      {"commutator", commutator},
      {"multiplicity", multiplicity_sum},
      {"manifolds", manifold_drift},
      {"adrt-drt", adrt_equals_drt},
      {"closed-form", closed_form_small},
      {"blocked", blocked_vs_dense},
      {"lindblad", lindblad_structure},
      {"dark-state", lindblad_dark_state},
      {"rwa", rwa_swap},
      {"sampling", sampling_bound},
  };
  ValidationReport report;
  for (const auto& [label, check] : suite) {
    try {
      report.checks.push_back(check());
    } catch (const std::exception& e) {
      report.checks.push_back({label, false, 0.0, 0.0, std::string("threw: ") + e.what()});
    }
  }
  return report;
}

}  // namespace spinbath
