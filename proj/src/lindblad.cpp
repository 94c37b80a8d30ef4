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

#include "spinbath/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Sparse>

#include "spinbath/errors.hpp"
#include "spinbath/spin_algebra.hpp"

namespace spinbath {

namespace {

using SparseOp = Eigen::SparseMatrix<Complex>;

constexpr double kTraceDrift = 1e-8;
constexpr double kPositivityFloor = -1e-6;

void check_rates(const std::vector<Dissipator>& dissipators) {
  for (const auto& d : dissipators) {
    if (!(d.rate >= 0.0) || !std::isfinite(d.rate)) throw ArgumentError("dissipator rate must be >= 0");
  }
}

double spectral_norm_sq(const OperatorMatrix& l) {
  if (l.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(l.adjoint() * l, Eigen::EigenvaluesOnly);
  return std::max(0.0, s.eigenvalues().maxCoeff());
}

double spectral_norm(const OperatorMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(h, Eigen::EigenvaluesOnly);
  return s.eigenvalues().cwiseAbs().maxCoeff();
}

// One segment's generator with sparse operators. Right products use
// rho A = (A^dagger rho^dagger)^dagger, exact for any rho.
struct Generator {
  SparseOp h;
  bool has_h = false;
  std::vector<SparseOp> jumps;
  std::vector<SparseOp> decay;  // L^dagger L
  std::vector<double> rates;
  double norm_bound = 0.0;

  Generator(const MeSegment& seg, Eigen::Index dim) {
    check_rates(seg.dissipators);
    if (seg.hamiltonian.size() != 0) {
      if (seg.hamiltonian.rows() != dim) throw ArgumentError("Hamiltonian does not match state");
      h = seg.hamiltonian.sparseView();
      has_h = true;
      norm_bound += 2.0 * spectral_norm(seg.hamiltonian);
    }
    for (const auto& d : seg.dissipators) {
      if (d.jump.rows() != dim || d.jump.cols() != dim) throw ArgumentError("jump operator does not match state");
      if (d.rate == 0.0) continue;
      jumps.push_back(d.jump.sparseView());
      decay.push_back(SparseOp(jumps.back().adjoint()) * jumps.back());
      rates.push_back(d.rate);
      norm_bound += 2.0 * d.rate * spectral_norm_sq(d.jump);
    }
  }

  Eigen::MatrixXcd operator()(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    const Eigen::MatrixXcd rho_dag = rho.adjoint();
    if (has_h) {
      const Eigen::MatrixXcd hr = h * rho;
      const Eigen::MatrixXcd rh_dag = h * rho_dag;  // (rho h)^dagger
      out += Complex(0.0, -1.0) * (hr - rh_dag.adjoint());
    }
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      const Eigen::MatrixXcd lr = jumps[i] * rho;
      const Eigen::MatrixXcd lrl_dag = jumps[i] * lr.adjoint();  // (L rho L^dagger)^dagger
      const Eigen::MatrixXcd mr = decay[i] * rho;
      const Eigen::MatrixXcd rm_dag = decay[i] * rho_dag;
      out += rates[i] * (lrl_dag.adjoint() - 0.5 * (mr + rm_dag.adjoint()));
    }
    return out;
  }
};

}  // namespace

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const OperatorMatrix& hamiltonian,
                              const std::vector<Dissipator>& dissipators) {
  check_rates(dissipators);
  if (rho.rows() != rho.cols()) throw ArgumentError("state must be square");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  if (hamiltonian.size() != 0) {
    if (hamiltonian.rows() != rho.rows()) throw ArgumentError("Hamiltonian does not match state");
    out += Complex(0.0, -1.0) * (hamiltonian * rho - rho * hamiltonian);
  }
  for (const auto& d : dissipators) {
    if (d.jump.rows() != rho.rows()) throw ArgumentError("jump operator does not match state");
    const OperatorMatrix ldl = d.jump.adjoint() * d.jump;
    out += d.rate * (d.jump * rho * d.jump.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

Dissipator resonant_dissipator(const BathSpec& spec) {
  auto c = collective_lowering(spec.gx);
  return {std::move(c.op), c.norm};
}

Dissipator dispersive_dissipator(const BathSpec& spec) {
  auto c = collective_dephasing(spec.gz);
  return {std::move(c.op), c.norm};
}

MeSchedule make_resonant_me(const BathSpec& spec, double total_time) {
  spec.validate();
  MeSchedule s;
  s.total_time = total_time;
  s.cycle.push_back({"resonant", {}, {resonant_dissipator(spec)}, total_time});
  return s;
}

MeSchedule make_alternating_me(const BathSpec& spec, double resonant_time, double dispersive_time,
                               double total_time) {
  spec.validate();
  if (!(resonant_time > 0.0) || !(dispersive_time > 0.0))
    throw ArgumentError("segment lengths must be positive");
  MeSchedule s;
  s.total_time = total_time;
  s.cycle.push_back({"dispersive", {}, {dispersive_dissipator(spec)}, dispersive_time});
  s.cycle.push_back({"resonant", {}, {resonant_dissipator(spec)}, resonant_time});
  return s;
}

double default_me_step(const BathSpec& spec) {
  double gp = 0.0;
  double gl = 0.0;
  for (int k = 0; k < spec.n; ++k) {
    gp += spec.gx[k] * spec.gx[k];
    gl += spec.gz[k] * spec.gz[k];
  }
  const double g = std::max(std::sqrt(gp), std::sqrt(gl));
  if (g == 0.0) throw DegenerateCouplingError("all couplings vanish");
  return 0.01 / g;
}

MeResult integrate_me(const DensityMatrix& rho0, const MeSchedule& schedule, double dt) {
  if (rho0.space() != Space::bath_only) throw ArgumentError("master equation acts on the bath alone");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigurationError("time step must be positive");
  if (schedule.cycle.empty()) throw ConfigurationError("master-equation schedule is empty");
  if (!(schedule.total_time >= 0.0)) throw ConfigurationError("total time must be non-negative");

  std::vector<Generator> generators;
  for (const MeSegment& seg : schedule.cycle) {
    if (!(seg.duration > 0.0)) throw ConfigurationError("segment durations must be positive");
    generators.emplace_back(seg, rho0.dim());
    if (generators.back().norm_bound * dt >= 0.1) {
      std::ostringstream os;
      os << "step " << dt << " too large for segment '" << seg.label << "' (generator bound "
         << generators.back().norm_bound << ")";
      throw ConfigurationError(os.str());
    }
  }

  MeResult result{{}, rho0};
  RunRecord& rec = result.record;
  std::ostringstream os;
  os << "lindblad segments=" << schedule.cycle.size() << " total_time=" << schedule.total_time << " dt=" << dt;
  rec.meta.schedule = os.str();
  rec.meta.version = library_version();

  Eigen::MatrixXcd rho = rho0.matrix();
  double t = 0.0;
  int segment = 0;
  auto push_row = [&]() {
    const DensityMatrix now(rho, Space::bath_only);
    rec.rows.push_back({segment, t, purity(now), polarization(now), {}, 0});
  };
  push_row();

  while (t < schedule.total_time * (1.0 - 1e-14)) {
    const std::size_t which = static_cast<std::size_t>(segment) % schedule.cycle.size();
    const Generator& gen = generators[which];
    const double length = std::min(schedule.cycle[which].duration, schedule.total_time - t);
    const auto steps = static_cast<long>(std::ceil(length / dt - 1e-12));
    const double h = length / static_cast<double>(std::max(1L, steps));
    for (long s = 0; s < steps; ++s) {
      const Eigen::MatrixXcd k1 = gen(rho);
      const Eigen::MatrixXcd k2 = gen(rho + 0.5 * h * k1);
      const Eigen::MatrixXcd k3 = gen(rho + 0.5 * h * k2);
      const Eigen::MatrixXcd k4 = gen(rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t += length;
    ++segment;

    const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (drift > kTraceDrift) {
      rec.valid = false;
      rec.error = "trace drifted by " + std::to_string(drift);
      throw IntegrityError(rec.error);
    }
    const double lo = DensityMatrix(rho, Space::bath_only).min_eigenvalue();
    if (lo < kPositivityFloor) {
      rec.valid = false;
      rec.error = "eigenvalue " + std::to_string(lo) + " below positivity floor";
      throw IntegrityError(rec.error);
    }
    push_row();
  }
  result.final_state = DensityMatrix(rho, Space::bath_only);
  return result;
}

}  // namespace spinbath
