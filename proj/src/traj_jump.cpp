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

#include "unravel/traj_jump.hpp"

#include <cmath>

#include "unravel/errors.hpp"
#include "unravel/observables.hpp"

namespace unravel {

double sample_jump_time(RandomStream& rng, double lambda) {
  if (lambda < 0.0) throw InvalidArgument("sample_jump_time: lambda must be nonnegative");
  return rng.exponential(lambda);
}

int sample_collapse_center(RandomStream& rng, const CollapseBank& bank,
                           const WaveFunction& psi) {
  if (psi.dim() != bank.dim()) throw DimensionMismatch("sample_collapse_center: size mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw NotNormalized("sample_collapse_center: psi not normalized");
  }
  // weights_f = sum_j K_f(j)^2 |psi_j|^2; completeness makes them sum to 1.
  RealVector probs = psi.amplitudes.cwiseAbs2();
  RealVector weights = bank.profiles_sq * probs;
  const double u = rng.uniform01() * weights.sum();
  double cumulative = 0.0;
  int last_positive = 0;
  for (int f = 0; f < weights.size(); ++f) {
    if (weights[f] > 0.0) last_positive = f;
    cumulative += weights[f];
    if (u < cumulative) return f;
  }
  return last_positive;  // u landed on the top edge of the CDF
}

WaveFunction apply_jump(const CollapseBank& bank, int center_index, const WaveFunction& psi) {
  if (center_index < 0 || center_index >= bank.n_ops()) {
    throw InvalidArgument("apply_jump: center index out of range");
  }
  if (psi.dim() != bank.dim()) throw DimensionMismatch("apply_jump: size mismatch");
  WaveFunction out;
  out.amplitudes = bank.profiles.row(center_index).transpose().cast<Complex>().cwiseProduct(
      psi.amplitudes);
  const double norm = out.amplitudes.norm();
  if (norm <= 1e-14) {
    throw ZeroOverlap("apply_jump: state has no weight under this collapse operator");
  }
  out.amplitudes /= norm;
  return out;
}

void run_jump_core(const SystemModel& model, const SpectralPropagator& propagator,
                   WaveFunction psi, double t_final, double output_dt, RandomStream& rng,
                   const SampleSink& on_sample, std::vector<JumpEvent>* events) {
  if (!(output_dt > 0.0)) throw InvalidArgument("run_jump_core: output_dt must be positive");
  const int n_outputs = static_cast<int>(std::floor(t_final / output_dt + 1e-9));

  double t = 0.0;
  double t_jump = sample_jump_time(rng, model.lambda);
  on_sample(0, 0.0, psi.amplitudes);

  for (int k = 1; k <= n_outputs; ++k) {
    const double t_tick = k * output_dt;
    while (t_jump <= t_tick) {
      propagator.evolve_in_place(psi.amplitudes, t_jump - t);
      t = t_jump;
      const int f = sample_collapse_center(rng, model.bank, psi);
      JumpEvent event;
      event.time = t;
      event.center_index = f;
      const double before = expval(model.hamiltonian, psi);
      psi = apply_jump(model.bank, f, psi);
      event.energy_kick = expval(model.hamiltonian, psi) - before;
      if (events) events->push_back(event);
      t_jump = t + sample_jump_time(rng, model.lambda);
    }
    propagator.evolve_in_place(psi.amplitudes, t_tick - t);
    t = t_tick;
    on_sample(k, t_tick, psi.amplitudes);
  }
}

TrajectoryRecord run_jump_trajectory(const SystemModel& model, const WaveFunction& psi0,
                                     double t_final, double output_dt, RandomStream& rng) {
  SpectralPropagator propagator(model.hamiltonian);
  ObservableSet observables(model);

  TrajectoryRecord record;
  record.seed = rng.seed();
  record.trajectory_id = rng.stream_id();
  record.times = output_lattice(t_final, output_dt);
  for (const auto& name : ObservableSet::names()) {
    record.observables[name].reserve(record.times.size());
  }

  WaveFunction last;
  auto sink = [&](int, double, const Vector& psi) {
    last.amplitudes = psi;
    auto values = observables.evaluate(last);
    const auto& names = ObservableSet::names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      record.observables[names[i]].push_back(values[i]);
    }
  };
  run_jump_core(model, propagator, psi0, t_final, output_dt, rng, sink, &record.events);
  record.final_state = last;
  return record;
}

}  // namespace unravel
