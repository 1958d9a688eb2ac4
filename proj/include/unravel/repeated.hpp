// Copyright 2026 The Unravel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <variant>
#include <vector>

#include "unravel/lindblad.hpp"
#include "unravel/propagate.hpp"
#include "unravel/rng.hpp"
#include "unravel/trajectory.hpp"

namespace unravel {

enum class RepeatedMode { traced, z_measured, x_measured };

/// System operators induced by one ancilla collision: k_up = <up|V|up>,
/// k_down = <down|V|up> with V = exp(-i H_tot tau). Unitarity of V makes
/// k_up^dag k_up + k_down^dag k_down = 1 hold to machine precision.
struct KrausPair {
  Matrix k_up, k_down;
  double tau = 0.0;
  double coupling = 0.0;  // sqrt(lambda / tau)
  bool diagonal = false;  // both operators diagonal: O(n) application
  Vector d_up, d_down;    // diagonals for the fast path
};

/// Exact joint-unitary extraction on the system (x) qubit space with
/// H_tot = H (x) 1 + sqrt(lambda/tau) l_op (x) sigma_y. The sigma_y coupling
/// makes k_down = sqrt(lambda tau) l_op + O(tau^{3/2}) with a real positive
/// leading order.
KrausPair build_kraus_pair(const Matrix& hamiltonian, const Matrix& collision_op,
                           double lambda, double tau);

/// Model-level convenience using the model Hamiltonian and jump rate.
KrausPair build_kraus_pair(const SystemModel& model, const Matrix& collision_op, double tau);

/// rho <- k_up rho k_up^dag + k_down rho k_down^dag (trace preserving).
DensityMatrix channel_step(const KrausPair& kraus, const DensityMatrix& rho);

/// Measure the ancilla after the collision. z basis uses (k_up, k_down)
/// directly; the x basis uses m_pm = (k_up +- k_down)/sqrt(2). Returns the
/// renormalized state and the outcome bit (0 = up/plus, 1 = down/minus).
std::pair<WaveFunction, int> measured_step(const KrausPair& kraus, const WaveFunction& psi,
                                           MeasureBasis basis, RandomStream& rng);

/// One collision round per time step tau: the free step U(tau) applied once,
/// then one ancilla collision per collapse operator. The H-free collision
/// pairs keep the Hamiltonian from acting n_f times per round.
struct CollisionSet {
  std::vector<KrausPair> pairs;
  UnitaryPropagator free_step;
  double tau = 0.0;
};

CollisionSet build_collision_set(const SystemModel& model, double tau);

/// Measured-mode trajectory core (one RNG draw per collision).
void run_repeated_measured_core(const CollisionSet& collisions, WaveFunction psi,
                                int n_rounds, int rounds_per_output, MeasureBasis basis,
                                RandomStream& rng, const SampleSink& on_sample,
                                AncillaOutcomeLog* log);

/// Deterministic traced channel: rho advanced round by round.
MasterTrajectory run_repeated_traced(const CollisionSet& collisions, const DensityMatrix& rho0,
                                     int n_rounds, int rounds_per_output);

/// Full engine entry point. Measured modes return a TrajectoryRecord with the
/// outcome log attached; traced mode returns the deterministic
/// MasterTrajectory. n_rounds counts time steps; each round performs one
/// ancilla collision per bank operator.
std::variant<TrajectoryRecord, MasterTrajectory> run_repeated(
    const SystemModel& model, const WaveFunction& psi0, int n_rounds, double tau,
    RepeatedMode mode, int rounds_per_output, RandomStream& rng);

}  // namespace unravel
