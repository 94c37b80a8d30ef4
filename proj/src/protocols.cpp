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

#include "spinbath/protocols.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <variant>
#include <sstream>

#include "spinbath/errors.hpp"
#include "spinbath/random.hpp"
#include "spinbath/spin_algebra.hpp"

#ifndef SPINBATH_VERSION
#define SPINBATH_VERSION "0.0.0-unknown"
#endif

namespace spinbath {

namespace {

double norm_of(const std::vector<double>& g) {
  double s = 0.0;
  for (double v : g) s += v * v;
  return std::sqrt(s);
}

void require_positive(double tau, const char* what) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw ArgumentError(std::string(what) + " must be positive and finite");
}

struct Group {
  std::vector<EvolveSegment> evolves;
  bool jittered = false;
};

std::vector<Group> split_groups(const ProtocolSchedule& schedule) {
  std::vector<Group> groups;
  for (const Segment& seg : schedule.cycle) {
    if (std::holds_alternative<ResetSegment>(seg)) {
      groups.emplace_back();
    } else {
      const auto& ev = std::get<EvolveSegment>(seg);
      groups.back().evolves.push_back(ev);
      groups.back().jittered = groups.back().jittered || (ev.jittered && schedule.jitter > 0.0);
    }
  }
  return groups;
}

// Either of the two state representations, chosen once per run.
// Carries a bath state into the frame where every gx is non-negative.
DensityMatrix to_canonical_frame(const DensityMatrix& rho, const BathSpec& spec) {
  bool any = false;
  for (bool f : spec.sign_flipped) any = any || f;
  if (!any) return rho;
  const int n = spec.n;
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(rho.dim());
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (int k = 0; k < n; ++k) {
      if (spec.sign_flipped[k] && !is_up(static_cast<std::size_t>(i), k + 1, n)) sign(i) = -sign(i);
    }
  }
  return DensityMatrix(sign.asDiagonal() * rho.matrix() * sign.asDiagonal(), Space::bath_only);
}

class BathEngine {
 public:
  BathEngine(const DensityMatrix& initial, int n, double fidelity) : n_(n), fidelity_(fidelity) {
    if (SectorState::is_sector_diagonal(initial)) {
      sector_ = SectorState::from_dense(initial);
    } else {
      dense_ = initial;
    }
  }

  using Channel = std::variant<SectorChannel, KrausChannel>;

  Channel channel(const BlockUnitary& w) const {
    if (sector_) return SectorChannel(w, fidelity_);
    return KrausChannel::from_joint_unitary(w.dense(), n_, fidelity_);
  }

  void apply(const Channel& ch) {
    if (sector_) {
      sector_ = std::get<SectorChannel>(ch).apply(*sector_);
    } else {
      dense_ = std::get<KrausChannel>(ch).apply(*dense_);
    }
  }

  void check() const {
    if (sector_) {
      sector_->check_integrity();
    } else {
      dense_->check_integrity();
    }
  }

  double purity() const { return sector_ ? sector_->purity() : spinbath::purity(*dense_); }
  double polarization() const {
    return sector_ ? sector_->polarization() : spinbath::polarization(*dense_);
  }
  std::vector<double> manifolds(const ManifoldProjector* projector) const {
    if (!projector) return {};
    return sector_ ? sector_->manifold_populations(*projector) : projector->populations(*dense_);
  }

 private:
  int n_;
  double fidelity_;
  std::optional<SectorState> sector_;
  std::optional<DensityMatrix> dense_;
};

}  // namespace

std::string library_version() { return SPINBATH_VERSION; }

void ProtocolSchedule::validate() const {
  if (cycles < 0) throw ArgumentError("cycle count must be non-negative");
  if (!(jitter >= 0.0 && jitter < 1.0)) throw ArgumentError("jitter must lie in [0, 1)");
  if (cycle.empty() || !std::holds_alternative<ResetSegment>(cycle.front()))
    throw ConfigurationError("every cycle must start with a probe reset");
  bool has_evolve = false;
  for (const Segment& seg : cycle) {
    if (const auto* ev = std::get_if<EvolveSegment>(&seg)) {
      has_evolve = true;
      require_positive(ev->tau, "segment duration");
      if (ev->kind == HamiltonianKind::time_dependent_rwa)
        throw ConfigurationError("time-dependent generator cannot be used in a protocol schedule");
    }
  }
  if (!has_evolve) throw ConfigurationError("a cycle needs at least one evolution segment");
}

std::string ProtocolSchedule::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << name << " cycles=" << cycles << " jitter=" << jitter << " seed=" << seed << " [";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) os << ", ";
    if (const auto* ev = std::get_if<EvolveSegment>(&cycle[i])) {
      os << to_string(ev->kind) << "(" << ev->tau << (ev->jittered ? ",j" : "") << ")";
    } else {
      os << "reset";
    }
  }
  os << "]";
  return os.str();
}

double default_tau_res(const BathSpec& spec) {
  const double g_perp = norm_of(spec.gx);
  if (g_perp == 0.0) throw DegenerateCouplingError("resonant swap time needs a nonzero gx");
  return std::numbers::pi / (2.0 * g_perp);
}

double default_tau_disp(const BathSpec& spec) {
  const double g_par = norm_of(spec.gz);
  if (g_par == 0.0) throw DegenerateCouplingError("dispersive time needs a nonzero gz");
  return 2.0 * std::numbers::pi / g_par;
}

ProtocolSchedule make_drt(const BathSpec& spec, double tau_res, int cycles) {
  spec.validate();
  require_positive(tau_res, "tau_res");
  ProtocolSchedule s;
  s.name = "drt";
  s.cycle = {ResetSegment{}, EvolveSegment{HamiltonianKind::flip_flop, tau_res, false}};
  s.cycles = cycles;
  s.validate();
  return s;
}

ProtocolSchedule make_adrt(const BathSpec& spec, double tau_res, double tau_disp, int cycles,
                           double jitter, std::uint64_t seed) {
  spec.validate();
  require_positive(tau_res, "tau_res");
  require_positive(tau_disp, "tau_disp");
  ProtocolSchedule s;
  s.name = "adrt";
  s.cycle = {ResetSegment{}, EvolveSegment{HamiltonianKind::dispersive, tau_disp, true},
             ResetSegment{}, EvolveSegment{HamiltonianKind::flip_flop, tau_res, false}};
  s.cycles = cycles;
  s.jitter = jitter;
  s.seed = seed;
  s.validate();
  return s;
}

ProtocolSchedule make_interacting(const BathSpec& spec, double tau_res, int cycles) {
  spec.validate();
  if (!spec.j) throw ConfigurationError("interacting protocol needs chain couplings j");
  require_positive(tau_res, "tau_res");
  ProtocolSchedule s;
  s.name = "interacting";
  s.cycle = {ResetSegment{}, EvolveSegment{HamiltonianKind::interacting, tau_res, false}};
  s.cycles = cycles;
  s.validate();
  return s;
}

RunRecord run(const ProtocolSchedule& schedule, const BathSpec& raw_spec, const RunOptions& options) {
  schedule.validate();
  const BathSpec spec = raw_spec.canonicalized();
  const int n = spec.n;

  RunRecord record;
  record.meta.spec = spec.describe();
  record.meta.schedule = schedule.describe();
  record.meta.seed = schedule.seed;
  record.meta.version = library_version();

  DensityMatrix initial = options.initial ? *options.initial : DensityMatrix::maximally_mixed_bath(n);
  if (initial.space() != Space::bath_only || initial.num_bath_spins() != n)
    throw ArgumentError("initial state must be a bath-only state of the spec's size");
  initial.check_integrity();
  initial = to_canonical_frame(initial, spec);

  std::unique_ptr<ManifoldProjector> projector;
  if (n <= options.max_manifold_spins) {
    projector = std::make_unique<ManifoldProjector>(DickeDecomposition(n, options.max_manifold_spins));
    record.meta.two_i = projector->two_i_labels();
  }

  std::map<HamiltonianKind, BlockedPropagator> propagators;
  for (const Segment& seg : schedule.cycle) {
    if (const auto* ev = std::get_if<EvolveSegment>(&seg); ev && !propagators.contains(ev->kind))
      propagators.emplace(ev->kind, BlockedPropagator(build_hamiltonian(ev->kind, spec)));
  }

  const std::vector<Group> groups = split_groups(schedule);
  auto group_unitary = [&](const Group& g, SeededRng& rng, double& elapsed) {
    BlockUnitary w = BlockUnitary::identity(n + 1);
    for (const EvolveSegment& ev : g.evolves) {
      double tau = ev.tau;
      if (ev.jittered && schedule.jitter > 0.0) tau *= 1.0 + schedule.jitter * (2.0 * rng.uniform() - 1.0);
      elapsed += tau;
      w = w.then(propagators.at(ev.kind).unitary(tau));
    }
    return w;
  };

  BathEngine engine(initial, n, options.reset_fidelity);

  // Fixed groups are built once; only jittered ones change per cycle.
  SeededRng rng(schedule.seed);
  std::vector<std::optional<BathEngine::Channel>> cached(groups.size());
  std::vector<double> cached_time(groups.size(), 0.0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!groups[i].jittered) cached[i] = engine.channel(group_unitary(groups[i], rng, cached_time[i]));
  }
  double elapsed = 0.0;
  long resets = 0;
  auto record_row = [&](int cycle) {
    record.rows.push_back(
        {cycle, elapsed, engine.purity(), engine.polarization(), engine.manifolds(projector.get()), resets});
  };
  record_row(0);

  int quiet = 0;
  for (int c = 1; c <= schedule.cycles; ++c) {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      ++resets;
      if (cached[i]) {
        elapsed += cached_time[i];
        engine.apply(*cached[i]);
      } else {
        engine.apply(engine.channel(group_unitary(groups[i], rng, elapsed)));
      }
    }
    try {
      engine.check();
    } catch (const IntegrityError& e) {
      record.valid = false;
      record.error = "cycle " + std::to_string(c) + ": " + e.what();
      return record;
    }
    record_row(c);
    if (options.stop_on_convergence) {
      const double delta = std::abs(record.rows.back().purity - record.rows[record.rows.size() - 2].purity);
      quiet = delta < options.convergence_tol ? quiet + 1 : 0;
      if (quiet >= options.convergence_window) {
        record.converged = true;
        break;
      }
    }
  }
  return record;
}

}  // namespace spinbath
