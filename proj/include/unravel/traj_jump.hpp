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

#include "unravel/propagate.hpp"
#include "unravel/rng.hpp"
#include "unravel/trajectory.hpp"

namespace unravel {

/// Waiting time to the next spontaneous jump; fixed-intensity Poisson, so the
/// draw is state independent. lambda == 0 yields the +infinity sentinel.
double sample_jump_time(RandomStream& rng, double lambda);

/// Collapse center drawn with probability ||K_f psi||^2 via inverse CDF over
/// the cumulative weights. Completeness makes the weights sum to one.
int sample_collapse_center(RandomStream& rng, const CollapseBank& bank,
                           const WaveFunction& psi);

/// psi -> K_f psi / ||K_f psi||.
WaveFunction apply_jump(const CollapseBank& bank, int center_index, const WaveFunction& psi);

/// Event-driven loop: exact unitary flights to the exact jump times
/// (no O(dt) bias from the jump channel), jumps applied in between, samples
/// delivered on the output lattice. `events`, when non-null, receives every
/// jump with its energy kick.
void run_jump_core(const SystemModel& model, const SpectralPropagator& propagator,
                   WaveFunction psi, double t_final, double output_dt, RandomStream& rng,
                   const SampleSink& on_sample, std::vector<JumpEvent>* events);

/// Single-trajectory convenience wrapper recording the standard observables.
TrajectoryRecord run_jump_trajectory(const SystemModel& model, const WaveFunction& psi0,
                                     double t_final, double output_dt, RandomStream& rng);

}  // namespace unravel
