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

#include <vector>

#include "unravel/model.hpp"

namespace unravel {

/// Deterministic density-matrix evolution sampled on a uniform time lattice.
/// This is the empirical oracle every stochastic unraveling must reproduce.
struct MasterTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// Right-hand side -i[H, rho] + lambda (sum_f K_f rho K_f - rho).
/// The collapse term reduces to a Hadamard product with the cached pair
/// overlap D(j,k) = sum_f K_f(j) K_f(k) because all K_f are diagonal.
Matrix lindblad_rhs(const SystemModel& model, const Matrix& rho);

/// Classical RK4 on the matrix ODE with a fixed step; states recorded every
/// output_dt. The step is refused when dt > 0.1/lambda or 0.1/||H||, and a
/// positivity monitor turns silent unphysical drift into PositivityLost.
MasterTrajectory evolve_master(const SystemModel& model, const DensityMatrix& rho0,
                               double t_final, double dt, double output_dt,
                               int threads = 1);

/// Closed-form coherence decay rate lambda (1 - exp(-separation^2 / (4 r_c^2)))
/// between two branches a given distance apart.
double decoherence_rate(double lambda, double r_c, double separation);

}  // namespace unravel
