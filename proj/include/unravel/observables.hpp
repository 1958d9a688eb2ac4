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

#include <string>
#include <vector>

#include "unravel/lindblad.hpp"
#include "unravel/model.hpp"

namespace unravel {

/// <psi|A|psi>; asserts the operator is Hermitian and discards the residual
/// imaginary part after checking it is below 1e-10.
double expval(const Matrix& op, const WaveFunction& psi);

/// tr(rho A), same checks.
double expval(const Matrix& op, const DensityMatrix& rho);

/// Probability weight strictly left of boundary_x and the complement.
std::pair<double, double> branch_weights(const GridSpec& grid, const WaveFunction& psi,
                                         double boundary_x);
std::pair<double, double> branch_weights(const GridSpec& grid, const DensityMatrix& rho,
                                         double boundary_x);

/// Frobenius norm of the off-diagonal position block coupling the regions
/// left and right of boundary_x.
double coherence_block_norm(const GridSpec& grid, const DensityMatrix& rho, double boundary_x);
double coherence_block_norm(const GridSpec& grid, const WaveFunction& psi, double boundary_x);

/// <H> change produced by one collapse at the given center.
double jump_energy_kick(const SystemModel& model, const WaveFunction& psi_before,
                        int center_index);

/// Least-squares slope of <H>(t) along a master trajectory. For the free
/// particle the expected value is lambda / (4 m r_c^2).
double heating_rate(const SystemModel& model, const MasterTrajectory& oracle);

/// The diagnostic bundle recorded along every trajectory: mean_x, var_x,
/// energy, weight_left, weight_right, coherence_block_norm. Bound to one
/// model (and branch boundary); pure functions over immutable inputs.
class ObservableSet {
 public:
  explicit ObservableSet(const SystemModel& model);
  ObservableSet(const SystemModel& model, double boundary_x);

  static const std::vector<std::string>& names();
  std::vector<double> evaluate(const WaveFunction& psi) const;
  std::vector<double> evaluate(const DensityMatrix& rho) const;
  double boundary() const { return boundary_x_; }

 private:
  const SystemModel* model_;
  double boundary_x_;
  RealVector x_;   // position diagonal
  RealVector x2_;  // squared position diagonal
  int split_;      // first site at or right of the boundary
};

}  // namespace unravel
