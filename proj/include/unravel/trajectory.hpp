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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unravel/model.hpp"

namespace unravel {

enum class MeasureBasis { z_basis, x_basis };

/// One spontaneous localization event: when, where, and the energy it
/// injected (<H> after minus before).
struct JumpEvent {
  double time = 0.0;
  int center_index = 0;
  double energy_kick = 0.0;
};

/// Record of every ancilla measurement along a repeated-interaction run.
struct AncillaOutcomeLog {
  std::vector<std::uint8_t> outcomes;
  MeasureBasis basis = MeasureBasis::z_basis;
};

/// Time series of observables for a single stochastic trajectory, sampled on
/// the uniform output lattice, plus the event log and final state.
struct TrajectoryRecord {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> observables;
  std::vector<JumpEvent> events;
  WaveFunction final_state;
  std::uint64_t seed = 0;
  std::uint64_t trajectory_id = 0;
  std::optional<AncillaOutcomeLog> ancilla_log;
};

/// Sink invoked by the engine cores at every output tick. Ensembles
/// accumulate projectors through this; single-trajectory wrappers build the
/// observable table.
using SampleSink = std::function<void(int tick_index, double t, const Vector& psi)>;

/// Output lattice t_k = k * output_dt, k = 0..floor(t_final/output_dt).
std::vector<double> output_lattice(double t_final, double output_dt);

}  // namespace unravel
