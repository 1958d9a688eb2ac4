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

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace unravel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Hermitian unit-trace positive matrix in the position basis.
using DensityMatrix = Matrix;

// Reference values proposed in the collapse-model literature, recorded for
// documentation only. All simulations in this library run in dimensionless
// units (hbar = 1) with jump rates of order one.
inline constexpr double kReferenceJumpRatePerSecond = 1e-16;
inline constexpr double kReferenceCollapseRadiusMeters = 1e-7;

/// Uniform 1D position grid; the discretized single-particle Hilbert space.
struct GridSpec {
  int n_sites = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double dx = 0.0;

  double x(int j) const { return x_min + j * dx; }
  double midpoint() const { return 0.5 * (x_min + x_max); }
};

/// Family of discretized Gaussian collapse operators K_f, one per grid site.
/// All operators are real, diagonal, and commuting; after the per-site
/// renormalization sum_f K_f(j)^2 == 1 holds at every site, which is the
/// single completeness contract every dynamics engine relies on.
struct CollapseBank {
  RealMatrix profiles;      // n_f x n; row f holds the diagonal of K_f
  RealMatrix profiles_sq;   // elementwise square, cached for jump weights
  RealMatrix pair_overlap;  // D(j,k) = sum_f K_f(j) K_f(k)
  RealVector centers;       // collapse centers x_f
  double renorm_factor = 1.0;

  int n_ops() const { return static_cast<int>(profiles.rows()); }
  int dim() const { return static_cast<int>(profiles.cols()); }
};

/// Pure state vector on the grid, position basis.
struct WaveFunction {
  Vector amplitudes;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

/// Everything the dynamics engines share: grid, Hamiltonian, collapse bank
/// and the model parameters. Immutable after construction; safe to share
/// read-only across trajectory workers.
struct SystemModel {
  GridSpec grid;
  Matrix hamiltonian;
  CollapseBank bank;
  double lambda = 0.0;  // jump intensity, 1/time
  double r_c = 1.0;     // collapse width, length
  double mass = 1.0;
};

GridSpec build_grid(int n_sites, double x_min, double x_max);

CollapseBank build_collapse_bank(const GridSpec& grid, double r_c);

/// Free-particle Hamiltonian (central second difference, periodic boundary
/// conditions) plus an optional diagonal potential.
Matrix build_hamiltonian(const GridSpec& grid, double mass,
                         const std::optional<RealVector>& potential = std::nullopt);

/// Assembles the full model; throws if the Hamiltonian fails the Hermiticity
/// check or a parameter is out of range (lambda may be zero for the pure
/// Schroedinger control case).
SystemModel make_model(const GridSpec& grid, double lambda, double r_c, double mass,
                       const std::optional<RealVector>& potential = std::nullopt);

/// Normalized Gaussian packet exp(-(x-x0)^2/(4 sigma^2) + i p0 x).
WaveFunction gaussian_packet(const GridSpec& grid, double x0, double p0, double sigma);

/// Equal-weight superposition of two well-separated packets (|x1-x2| >= 6 sigma).
WaveFunction cat_state(const GridSpec& grid, double x1, double x2, double sigma);

WaveFunction basis_state(const GridSpec& grid, int site);
WaveFunction uniform_state(const GridSpec& grid);

/// Max-norm Hermiticity deviation ||A - A^dagger||_max.
double hermiticity_deviation(const Matrix& a);

/// Throws unless rho is Hermitian, unit trace and positive within the given
/// tolerances (min eigenvalue >= -eig_tol).
void check_density(const DensityMatrix& rho, double herm_tol = 1e-10,
                   double trace_tol = 1e-10, double eig_tol = 1e-8);

}  // namespace unravel
