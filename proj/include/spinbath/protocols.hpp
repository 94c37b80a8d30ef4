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

#ifndef SPINBATH_PROTOCOLS_HPP
#define SPINBATH_PROTOCOLS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinbath/bath_spec.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/hamiltonians.hpp"

namespace spinbath {

struct ResetSegment {};

struct EvolveSegment {
  HamiltonianKind kind = HamiltonianKind::flip_flop;
  double tau = 0.0;
  /// Duration is rescaled each cycle by a seeded factor in [1-j, 1+j].
  bool jittered = false;
};

using Segment = std::variant<ResetSegment, EvolveSegment>;

/// One cycle of segments repeated `cycles` times. Every cycle starts with a
/// reset, so the probe enters each evolution block in its ground state.
struct ProtocolSchedule {
  std::string name = "custom";
  std::vector<Segment> cycle;
  int cycles = 0;
  double jitter = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  std::string describe() const;
};

/// pi / (2 g_perp): full swap time of the brightest collective transition.
double default_tau_res(const BathSpec& spec);
/// 2 pi / g_par.
double default_tau_disp(const BathSpec& spec);

/// [Reset, Evolve(flip_flop, tau_res)] x cycles.
ProtocolSchedule make_drt(const BathSpec& spec, double tau_res, int cycles);

/// [Reset, Evolve(dispersive, tau_disp), Reset, Evolve(flip_flop, tau_res)] x cycles.
/// With jitter > 0 the dispersive duration is drawn per cycle from
/// tau_disp * [1 - jitter, 1 + jitter] using `seed`.
ProtocolSchedule make_adrt(const BathSpec& spec, double tau_res, double tau_disp, int cycles,
                           double jitter = 0.0, std::uint64_t seed = 0);

/// [Reset, Evolve(interacting, tau_res)] x cycles. Needs spec.j.
ProtocolSchedule make_interacting(const BathSpec& spec, double tau_res, int cycles);

struct RunRow {
  int cycle = 0;
  double elapsed = 0.0;
  double purity = 0.0;
  double polarization = 0.0;
  std::vector<double> manifold_populations;  // decreasing I, see RunMetadata::two_i
  long probe_reset_count = 0;
};

struct RunMetadata {
  std::string spec;
  std::string schedule;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<int> two_i;
};

struct RunRecord {
  std::vector<RunRow> rows;
  RunMetadata meta;
  bool valid = true;
  std::string error;
  bool converged = false;
};

struct RunOptions {
  /// Bath-only initial state. Default: maximally mixed.
  std::optional<DensityMatrix> initial;
  double reset_fidelity = 1.0;
  /// Stop once purity moved less than convergence_tol per cycle for
  /// convergence_window consecutive cycles; `cycles` is then the cap.
  bool stop_on_convergence = false;
  double convergence_tol = 1e-6;
  int convergence_window = 10;
  /// Manifold populations need the Dicke basis; skipped above this size.
  int max_manifold_spins = 10;
};

/// Executes the schedule. Deterministic in (schedule, spec, options). An
/// IntegrityError stops the run and returns the rows so far with
/// valid = false.
RunRecord run(const ProtocolSchedule& schedule, const BathSpec& spec, const RunOptions& options = {});

std::string library_version();

}  // namespace spinbath

#endif  // SPINBATH_PROTOCOLS_HPP
