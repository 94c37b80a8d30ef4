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

#ifndef SPINBATH_LINDBLAD_HPP
#define SPINBATH_LINDBLAD_HPP

#include <string>
#include <vector>

#include "spinbath/bath_spec.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/protocols.hpp"

namespace spinbath {

// Coarse-grained bath-only master equation with time-independent rates:
// resonant phases carry (collective lowering, g_perp), dispersive phases
// carry (collective dephasing, g_par), and the heating rate is zero.

struct Dissipator {
  OperatorMatrix jump;
  double rate = 0.0;
};

/// -i[H, rho] + Sum rate (L rho L^dagger - 1/2 {L^dagger L, rho}).
/// An empty `hamiltonian` (0 x 0) means H = 0.
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const OperatorMatrix& hamiltonian,
                              const std::vector<Dissipator>& dissipators);

Dissipator resonant_dissipator(const BathSpec& spec);
Dissipator dispersive_dissipator(const BathSpec& spec);

struct MeSegment {
  std::string label;
  OperatorMatrix hamiltonian;  // empty for H = 0
  std::vector<Dissipator> dissipators;
  double duration = 0.0;
};

/// Segments repeated in order until total_time has elapsed; the last
/// segment is truncated if needed.
struct MeSchedule {
  std::vector<MeSegment> cycle;
  double total_time = 0.0;
};

/// Resonant-only schedule.
MeSchedule make_resonant_me(const BathSpec& spec, double total_time);
/// Resonant and dispersive phases of the given lengths, alternating.
MeSchedule make_alternating_me(const BathSpec& spec, double resonant_time, double dispersive_time,
                               double total_time);

/// 0.01 / max(g_perp, g_par).
double default_me_step(const BathSpec& spec);

struct MeResult {
  RunRecord record;  // one row per completed segment
  DensityMatrix final_state;
};

/// Fixed-step RK4. Throws ConfigurationError if dt times a bound on the
/// generator norm is 0.1 or more, IntegrityError if trace drifts by more
/// than 1e-8 or an eigenvalue drops below -1e-6.
MeResult integrate_me(const DensityMatrix& rho0, const MeSchedule& schedule, double dt);

}  // namespace spinbath

#endif  // SPINBATH_LINDBLAD_HPP
