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

#ifndef SPINBATH_HAMILTONIANS_HPP
#define SPINBATH_HAMILTONIANS_HPP

#include <string_view>

#include "spinbath/bath_spec.hpp"
#include "spinbath/spin_algebra.hpp"

namespace spinbath {

// Every builder returns an operator on the joint probe+bath space of
// dimension 2^(n+1), probe first. The resonance condition is taken as
// Omega_0 = omega_L (Hartmann-Hahn).

enum class HamiltonianKind { flip_flop, dispersive, interacting, time_dependent_rwa };

std::string_view to_string(HamiltonianKind kind);

/// Sum_k gx_k (S+ I-_k + S- I+_k).
OperatorMatrix build_flip_flop(const BathSpec& spec);

/// S^z Sum_k gz_k I^z_k. Diagonal in the product basis.
OperatorMatrix build_dispersive(const BathSpec& spec);

/// Flip-flop with g_k = gx_k plus the open XX chain
/// Sum_b j_b (I+_b I-_{b+1} + I-_b I+_{b+1}). Throws ConfigurationError if
/// spec.j is missing.
OperatorMatrix build_interacting(const BathSpec& spec);

/// Same as above with an arbitrary coupling matrix; only the strict upper
/// triangle of `couplings` (n x n) is read.
OperatorMatrix build_interacting(const BathSpec& spec, const Eigen::MatrixXd& couplings);

/// Interaction-picture Hamiltonian with co-rotating, counter-rotating and
/// longitudinal terms, evaluated at time t for Rabi frequency omega0.
OperatorMatrix build_time_dependent(const BathSpec& spec, double omega0, double t);

/// Builds any of the static kinds. time_dependent_rwa is rejected.
OperatorMatrix build_hamiltonian(HamiltonianKind kind, const BathSpec& spec);

/// S^z/2 + Sum_k I^z_k on the joint space (conserved by the flip-flop terms).
OperatorMatrix joint_magnetization(int n);

/// Time-ordered propagator of build_time_dependent over [0, duration] by the
/// midpoint product rule. The step never exceeds
/// 2 pi / (omega_L + omega0) / steps_per_period.
OperatorMatrix time_ordered_propagator(const BathSpec& spec, double omega0, double duration,
                                       int steps_per_period = 40);

/// max_ij |H_ij - conj(H_ji)|.
double hermiticity_error(const OperatorMatrix& h);

}  // namespace spinbath

#endif  // SPINBATH_HAMILTONIANS_HPP
