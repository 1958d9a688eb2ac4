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

#include "unravel/traj_diffusive.hpp"

#include <cmath>

#include "unravel/errors.hpp"
#include "unravel/observables.hpp"

namespace unravel {

NoiseIncrement sample_noise_increment(RandomStream& rng, int n_f, double dt) {
  if (n_f <= 0) throw InvalidArgument("sample_noise_increment: n_f must be positive");
  if (!(dt > 0.0)) throw InvalidArgument("sample_noise_increment: dt must be positive");
  NoiseIncrement noise;
  noise.dw.resize(n_f);
  const double scale = std::sqrt(dt);
  for (int f = 0; f < n_f; ++f) noise.dw[f] = scale * rng.gaussian();
  return noise;
}

void diffusive_step_in_place(const SystemModel& model, const UnitaryPropagator& u,
                             Vector& psi, const NoiseIncrement& noise) {
  if (psi.size() != model.bank.dim() || noise.dw.size() != model.bank.n_ops()) {
    throw DimensionMismatch("diffusive_step: dimension mismatch");
  }
  psi = u.matrix * psi;
  if (model.lambda == 0.0) return;
  // theta_j = sqrt(lambda) sum_f dw_f K_f(j); diagonal phase, exactly unitary.
  RealVector theta = std::sqrt(model.lambda) * (model.bank.profiles.transpose() * noise.dw);
  for (int j = 0; j < psi.size(); ++j) psi[j] *= std::polar(1.0, theta[j]);
}

WaveFunction diffusive_step(const SystemModel& model, const WaveFunction& psi, double dt,
                            const NoiseIncrement& noise) {
  UnitaryPropagator u = SpectralPropagator(model.hamiltonian).propagator(dt);
  WaveFunction out = psi;
  diffusive_step_in_place(model, u, out.amplitudes, noise);
  return out;
}

void run_diffusive_core(const SystemModel& model, const UnitaryPropagator& u_dt,
                        WaveFunction psi, double t_final, double dt, double output_dt,
                        RandomStream& rng, const SampleSink& on_sample) {
  const double ratio = output_dt / dt;
  const int steps_per_output = static_cast<int>(std::lround(ratio));
  if (steps_per_output < 1 || std::abs(ratio - steps_per_output) > 1e-9) {
    throw InvalidArgument("run_diffusive_core: output_dt must be an integer multiple of dt");
  }
  const int n_outputs = static_cast<int>(std::floor(t_final / output_dt + 1e-9));
  const int n_f = model.bank.n_ops();

  on_sample(0, 0.0, psi.amplitudes);
  for (int k = 1; k <= n_outputs; ++k) {
    for (int s = 0; s < steps_per_output; ++s) {
      NoiseIncrement noise = sample_noise_increment(rng, n_f, dt);
      diffusive_step_in_place(model, u_dt, psi.amplitudes, noise);
    }
    on_sample(k, k * output_dt, psi.amplitudes);
  }
}

TrajectoryRecord run_diffusive_trajectory(const SystemModel& model, const WaveFunction& psi0,
                                          double t_final, double dt, double output_dt,
                                          RandomStream& rng) {
  UnitaryPropagator u = SpectralPropagator(model.hamiltonian).propagator(dt);
  ObservableSet observables(model);

  TrajectoryRecord record;
  record.seed = rng.seed();
  record.trajectory_id = rng.stream_id();
  record.times = output_lattice(t_final, output_dt);

  WaveFunction last;
  auto sink = [&](int, double, const Vector& psi) {
    last.amplitudes = psi;
    auto values = observables.evaluate(last);
    const auto& names = ObservableSet::names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      record.observables[names[i]].push_back(values[i]);
    }
  };
  run_diffusive_core(model, u, psi0, t_final, dt, output_dt, rng, sink);
  record.final_state = last;
  return record;
}

}  // namespace unravel
