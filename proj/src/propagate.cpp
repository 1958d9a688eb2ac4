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

#include "unravel/propagate.hpp"

#include <cmath>

#include "unravel/errors.hpp"
#include "unravel/rng.hpp"

namespace unravel {

namespace {

bool is_diagonal(const Matrix& a) {
  for (int c = 0; c < a.cols(); ++c) {
    for (int r = 0; r < a.rows(); ++r) {
      if (r != c && a(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

std::uint64_t hash_matrix(const Matrix& a) {
  return fnv1a64(a.data(), sizeof(Complex) * a.size());
}

}  // namespace

SpectralPropagator::SpectralPropagator(const Matrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw DimensionMismatch("SpectralPropagator: Hamiltonian not square");
  }
  if (hermiticity_deviation(hamiltonian) > 1e-10) {
    throw NotHermitian("SpectralPropagator: Hamiltonian not Hermitian");
  }
  hash_ = hash_matrix(hamiltonian);
  if (is_diagonal(hamiltonian)) {
    diagonal_ = true;
    energies_ = hamiltonian.diagonal().real();
    vectors_ = Matrix::Identity(hamiltonian.rows(), hamiltonian.cols());
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
    if (solver.info() != Eigen::Success) {
      throw EigenFailure("SpectralPropagator: eigendecomposition failed");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }
  spectral_norm_ = energies_.size() ? energies_.cwiseAbs().maxCoeff() : 0.0;
}

UnitaryPropagator SpectralPropagator::propagator(double dt) const {
  if (!(dt > 0.0)) throw InvalidArgument("propagator: dt must be positive");
  UnitaryPropagator u;
  u.dt = dt;
  u.source_hash = fnv1a64(&dt, sizeof(dt), hash_);
  Vector phases(energies_.size());
  for (int j = 0; j < energies_.size(); ++j) {
    phases[j] = std::polar(1.0, -energies_[j] * dt);
  }
  if (diagonal_) {
    u.matrix = phases.asDiagonal();
  } else {
    u.matrix.noalias() = vectors_ * phases.asDiagonal() * vectors_.adjoint();
  }
  return u;
}

void SpectralPropagator::evolve_in_place(Vector& psi, double dt) const {
  if (psi.size() != energies_.size()) throw DimensionMismatch("evolve_in_place: size mismatch");
  if (dt == 0.0) return;
  if (diagonal_) {
    for (int j = 0; j < psi.size(); ++j) psi[j] *= std::polar(1.0, -energies_[j] * dt);
    return;
  }
  Vector coeffs = vectors_.adjoint() * psi;
  for (int j = 0; j < coeffs.size(); ++j) coeffs[j] *= std::polar(1.0, -energies_[j] * dt);
  psi.noalias() = vectors_ * coeffs;
}

UnitaryPropagator precompute_propagator(const Matrix& hamiltonian, double dt) {
  return SpectralPropagator(hamiltonian).propagator(dt);
}

WaveFunction unitary_step(const UnitaryPropagator& u, const WaveFunction& psi) {
  if (u.matrix.cols() != psi.amplitudes.size()) {
    throw DimensionMismatch("unitary_step: dimension mismatch");
  }
  WaveFunction out;
  out.amplitudes.noalias() = u.matrix * psi.amplitudes;
  return out;
}

Matrix hermitian_expi(const Matrix& g) {
  if (g.rows() != g.cols()) throw DimensionMismatch("hermitian_expi: matrix not square");
  if (hermiticity_deviation(g) > 1e-10) throw NotHermitian("hermitian_expi: input not Hermitian");
  if (is_diagonal(g)) {
    Vector d(g.rows());
    for (int j = 0; j < g.rows(); ++j) d[j] = std::polar(1.0, g(j, j).real());
    return Matrix(d.asDiagonal());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(g);
  if (solver.info() != Eigen::Success) throw EigenFailure("hermitian_expi: eigensolver failed");
  Vector phases(g.rows());
  for (int j = 0; j < g.rows(); ++j) phases[j] = std::polar(1.0, solver.eigenvalues()[j]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace unravel
