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

/// One Wiener increment per collapse operator, variance dt each. The spatial
/// white-noise weight sqrt(dx) is already absorbed into the bank.
struct NoiseIncrement {
  RealVector dw;
};

NoiseIncrement sample_noise_increment(RandomStream& rng, int n_f, double dt);

/// psi <- exp(i sqrt(lambda) sum_f dw_f K_f) U(dt) psi. The noise generator is
/// diagonal, so its exponential is taken entrywise and the step is a product
/// of exact unitaries; the splitting against U(dt) is weakly first order.
void diffusive_step_in_place(const SystemModel& model, const UnitaryPropagator& u,
                             Vector& psi, const NoiseIncrement& noise);

/// One-off convenience that decomposes H internally; use the in-place variant
/// with a shared propagator inside loops.
WaveFunction diffusive_step(const SystemModel& model, const WaveFunction& psi, double dt,
                            const NoiseIncrement& noise);

/// Fixed-step loop of diffusive steps; output_dt must be an integer multiple
/// of dt. Trajectories stay exactly normalized and pure: this is the
/// collapse-free story, and only the ensemble average decoheres.
void run_diffusive_core(const SystemModel& model, const UnitaryPropagator& u_dt,
                        WaveFunction psi, double t_final, double dt, double output_dt,
                        RandomStream& rng, const SampleSink& on_sample);

TrajectoryRecord run_diffusive_trajectory(const SystemModel& model, const WaveFunction& psi0,
                                          double t_final, double dt, double output_dt,
                                          RandomStream& rng);

}  // namespace unravel
