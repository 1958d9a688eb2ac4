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

#include "unravel/observables.hpp"

#include <cmath>

#include "unravel/errors.hpp"
#include "unravel/stats.hpp"
#include "unravel/traj_jump.hpp"

namespace unravel {

namespace {

void check_op(const Matrix& op, Eigen::Index dim) {
  if (op.rows() != op.cols() || op.rows() != dim) {
    throw DimensionMismatch("expval: operator dimension mismatch");
  }
  if (hermiticity_deviation(op) > 1e-10) throw NotHermitian("expval: operator not Hermitian");
}

int split_index(const GridSpec& grid, double boundary_x) {
  if (boundary_x <= grid.x_min || boundary_x >= grid.x_max) {
    throw BoundaryOutsideGrid("branch boundary must lie inside the grid");
  }
  int split = 0;
  while (split < grid.n_sites && grid.x(split) < boundary_x) ++split;
  return split;
}

}  // namespace

double expval(const Matrix& op, const WaveFunction& psi) {
  check_op(op, psi.amplitudes.size());
  Complex v = psi.amplitudes.dot(op * psi.amplitudes);
  if (std::abs(v.imag()) > 1e-10) {
    throw SimulationError("expval: imaginary residue above 1e-10");
  }
  return v.real();
}

double expval(const Matrix& op, const DensityMatrix& rho) {
  check_op(op, rho.rows());
  Complex v = (rho * op).trace();
  if (std::abs(v.imag()) > 1e-10) {
    throw SimulationError("expval: imaginary residue above 1e-10");
  }
  return v.real();
}

std::pair<double, double> branch_weights(const GridSpec& grid, const WaveFunction& psi,
                                         double boundary_x) {
  const int split = split_index(grid, boundary_x);
  double left = 0.0, total = 0.0;
  for (int j = 0; j < grid.n_sites; ++j) {
    const double w = std::norm(psi.amplitudes[j]);
    total += w;
    if (j < split) left += w;
  }
  return {left, total - left};
}

std::pair<double, double> branch_weights(const GridSpec& grid, const DensityMatrix& rho,
                                         double boundary_x) {
  const int split = split_index(grid, boundary_x);
  double left = 0.0, total = 0.0;
  for (int j = 0; j < grid.n_sites; ++j) {
    const double w = rho(j, j).real();
    total += w;
    if (j < split) left += w;
  }
  return {left, total - left};
}

double coherence_block_norm(const GridSpec& grid, const DensityMatrix& rho, double boundary_x) {
  const int split = split_index(grid, boundary_x);
  if (split == 0 || split == grid.n_sites) return 0.0;
  return rho.block(0, split, split, grid.n_sites - split).norm();
}

double coherence_block_norm(const GridSpec& grid, const WaveFunction& psi, double boundary_x) {
  // For a pure state the cross block of |psi><psi| has Frobenius norm
  // sqrt(w_left * w_right).
  auto [left, right] = branch_weights(grid, psi, boundary_x);
  return std::sqrt(std::max(0.0, left) * std::max(0.0, right));
}

double jump_energy_kick(const SystemModel& model, const WaveFunction& psi_before,
                        int center_index) {
  const double before = expval(model.hamiltonian, psi_before);
  WaveFunction after = apply_jump(model.bank, center_index, psi_before);
  return expval(model.hamiltonian, after) - before;
}

double heating_rate(const SystemModel& model, const MasterTrajectory& oracle) {
  if (oracle.times.size() < 3) throw InsufficientPoints("heating_rate: need at least 3 samples");
  std::vector<double> energy(oracle.times.size());
  for (std::size_t i = 0; i < oracle.states.size(); ++i) {
    energy[i] = expval(model.hamiltonian, oracle.states[i]);
  }
  return linear_fit(oracle.times, energy).slope;
}

ObservableSet::ObservableSet(const SystemModel& model)
    : ObservableSet(model, model.grid.midpoint()) {}

ObservableSet::ObservableSet(const SystemModel& model, double boundary_x)
    : model_(&model), boundary_x_(boundary_x) {
  const int n = model.grid.n_sites;
  x_.resize(n);
  x2_.resize(n);
  for (int j = 0; j < n; ++j) {
    x_[j] = model.grid.x(j);
    x2_[j] = x_[j] * x_[j];
  }
  split_ = split_index(model.grid, boundary_x);
}

const std::vector<std::string>& ObservableSet::names() {
  static const std::vector<std::string> kNames = {
      "mean_x", "var_x", "energy", "weight_left", "weight_right", "coherence_block_norm"};
  return kNames;
}

std::vector<double> ObservableSet::evaluate(const WaveFunction& psi) const {
  const int n = model_->grid.n_sites;
  double mean = 0.0, second = 0.0, left = 0.0, total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = std::norm(psi.amplitudes[j]);
    mean += w * x_[j];
    second += w * x2_[j];
    total += w;
    if (j < split_) left += w;
  }
  const double energy = expval(model_->hamiltonian, psi);
  const double right = total - left;
  return {mean, second - mean * mean, energy, left, right,
          std::sqrt(std::max(0.0, left) * std::max(0.0, right))};
}

std::vector<double> ObservableSet::evaluate(const DensityMatrix& rho) const {
  const int n = model_->grid.n_sites;
  double mean = 0.0, second = 0.0, left = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = rho(j, j).real();
    mean += w * x_[j];
    second += w * x2_[j];
    if (j < split_) left += w;
  }
  const double energy = expval(model_->hamiltonian, rho);
  const double right = rho.trace().real() - left;
  return {mean, second - mean * mean, energy, left, right,
          coherence_block_norm(model_->grid, rho, boundary_x_)};
}

}  // namespace unravel
