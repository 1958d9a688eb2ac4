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

#include "unravel/model.hpp"

#include <cmath>
#include <sstream>

#include "unravel/errors.hpp"

namespace unravel {

GridSpec build_grid(int n_sites, double x_min, double x_max) {
  if (n_sites < 8) throw InvalidGrid("build_grid: n_sites must be at least 8");
  if (!(x_max > x_min)) throw InvalidGrid("build_grid: x_max must exceed x_min");
  GridSpec grid;
  grid.n_sites = n_sites;
  grid.x_min = x_min;
  grid.x_max = x_max;
  grid.dx = (x_max - x_min) / n_sites;
  return grid;
}

CollapseBank build_collapse_bank(const GridSpec& grid, double r_c) {
  if (!(r_c > 0.0)) throw InvalidArgument("build_collapse_bank: r_c must be positive");
  if (r_c < grid.dx / 4.0) {
    throw DegenerateBank("build_collapse_bank: r_c below dx/4, Gaussian unresolvable on grid");
  }
  const int n = grid.n_sites;
  CollapseBank bank;
  bank.centers.resize(n);
  bank.profiles.resize(n, n);

  // Raw operators: diag_j[(pi r_c^2)^(-1/4) exp(-(x_j - x_f)^2 / (2 r_c^2))] * sqrt(dx).
  // The sqrt(dx) absorbs the spatial white-noise weight of the continuum family,
  // so that sum_f K_f^2 = 1 is the discrete completeness statement.
  const double prefactor = std::pow(M_PI * r_c * r_c, -0.25) * std::sqrt(grid.dx);
  for (int f = 0; f < n; ++f) {
    const double x_f = grid.x(f);
    bank.centers[f] = x_f;
    for (int j = 0; j < n; ++j) {
      const double d = grid.x(j) - x_f;
      bank.profiles(f, j) = prefactor * std::exp(-d * d / (2.0 * r_c * r_c));
    }
  }

  // Global scalar: make the largest diagonal entry of sum_f K_f^2 exactly one...
  RealVector site_sums = bank.profiles.array().square().colwise().sum();
  bank.renorm_factor = 1.0 / std::sqrt(site_sums.maxCoeff());
  bank.profiles *= bank.renorm_factor;
  // ...then fix completeness site-by-site (edge sites see a truncated family).
  site_sums = bank.profiles.array().square().colwise().sum();
  for (int j = 0; j < n; ++j) {
    bank.profiles.col(j) /= std::sqrt(site_sums[j]);
  }

  bank.profiles_sq = bank.profiles.array().square();
  bank.pair_overlap.noalias() = bank.profiles.transpose() * bank.profiles;
  return bank;
}

Matrix build_hamiltonian(const GridSpec& grid, double mass,
                         const std::optional<RealVector>& potential) {
  if (!(mass > 0.0)) throw InvalidArgument("build_hamiltonian: mass must be positive");
  const int n = grid.n_sites;
  if (potential && potential->size() != n) {
    throw DimensionMismatch("build_hamiltonian: potential length differs from n_sites");
  }
  Matrix h = Matrix::Zero(n, n);
  // -(1/2m) d^2/dx^2 as the central second difference, periodic wrap.
  const double k = 1.0 / (2.0 * mass * grid.dx * grid.dx);
  for (int j = 0; j < n; ++j) {
    h(j, j) += 2.0 * k;
    h(j, (j + 1) % n) -= k;
    h(j, (j + n - 1) % n) -= k;
    if (potential) h(j, j) += (*potential)[j];
  }
  return h;
}

SystemModel make_model(const GridSpec& grid, double lambda, double r_c, double mass,
                       const std::optional<RealVector>& potential) {
  if (lambda < 0.0) throw InvalidArgument("make_model: lambda must be nonnegative");
  SystemModel model;
  model.grid = grid;
  model.lambda = lambda;
  model.r_c = r_c;
  model.mass = mass;
  model.hamiltonian = build_hamiltonian(grid, mass, potential);
  if (hermiticity_deviation(model.hamiltonian) > 1e-12) {
    throw NotHermitian("make_model: Hamiltonian failed Hermiticity check");
  }
  model.bank = build_collapse_bank(grid, r_c);
  return model;
}

namespace {

Vector raw_gaussian(const GridSpec& grid, double x0, double p0, double sigma) {
  Vector psi(grid.n_sites);
  for (int j = 0; j < grid.n_sites; ++j) {
    const double x = grid.x(j);
    const double arg = -(x - x0) * (x - x0) / (4.0 * sigma * sigma);
    psi[j] = std::exp(arg) * std::exp(Complex(0.0, p0 * x));
  }
  return psi;
}

void check_not_clipped(const GridSpec& grid, const Vector& normalized) {
  const double edge = std::max(std::abs(normalized[0]), std::abs(normalized[grid.n_sites - 1]));
  if (edge > 1e-8) {
    std::ostringstream msg;
    msg << "packet support reaches the grid boundary (edge amplitude " << edge << ")";
    throw PacketClipped(msg.str());
  }
}

}  // namespace

WaveFunction gaussian_packet(const GridSpec& grid, double x0, double p0, double sigma) {
  if (sigma < grid.dx) throw InvalidArgument("gaussian_packet: sigma below dx is unresolvable");
  if (x0 - 3.0 * sigma < grid.x_min || x0 + 3.0 * sigma > grid.x_max) {
    throw PacketClipped("gaussian_packet: x0 must sit 3 sigma inside the grid");
  }
  WaveFunction psi;
  psi.amplitudes = raw_gaussian(grid, x0, p0, sigma);
  psi.amplitudes /= psi.amplitudes.norm();
  check_not_clipped(grid, psi.amplitudes);
  return psi;
}

WaveFunction cat_state(const GridSpec& grid, double x1, double x2, double sigma) {
  if (std::abs(x1 - x2) < 6.0 * sigma) {
    throw OverlapTooLarge("cat_state: branches closer than 6 sigma");
  }
  WaveFunction left = gaussian_packet(grid, x1, 0.0, sigma);
  WaveFunction right = gaussian_packet(grid, x2, 0.0, sigma);
  WaveFunction cat;
  cat.amplitudes = left.amplitudes + right.amplitudes;
  cat.amplitudes /= cat.amplitudes.norm();
  return cat;
}

WaveFunction basis_state(const GridSpec& grid, int site) {
  if (site < 0 || site >= grid.n_sites) throw InvalidArgument("basis_state: site out of range");
  WaveFunction psi;
  psi.amplitudes = Vector::Zero(grid.n_sites);
  psi.amplitudes[site] = 1.0;
  return psi;
}

WaveFunction uniform_state(const GridSpec& grid) {
  WaveFunction psi;
  psi.amplitudes = Vector::Constant(grid.n_sites, 1.0 / std::sqrt(double(grid.n_sites)));
  return psi;
}

double hermiticity_deviation(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void check_density(const DensityMatrix& rho, double herm_tol, double trace_tol, double eig_tol) {
  if (rho.rows() != rho.cols()) throw DimensionMismatch("check_density: matrix not square");
  if (hermiticity_deviation(rho) > herm_tol) {
    throw NotHermitian("check_density: Hermiticity deviation above tolerance");
  }
  if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol) {
    throw SimulationError("check_density: trace differs from one");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigenFailure("check_density: eigensolver failed");
  if (solver.eigenvalues().minCoeff() < -eig_tol) {
    throw PositivityLost("check_density: negative eigenvalue beyond tolerance");
  }
}

}  // namespace unravel
