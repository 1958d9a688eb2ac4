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

#include "unravel/lindblad.hpp"

#include <cmath>

#include "unravel/errors.hpp"
#include "unravel/propagate.hpp"
#include "unravel/threading.hpp"

namespace unravel {

namespace {

constexpr int kRowBlock = 32;  // fixed partition so results are thread-count independent

// out = H * rho, row blocks computed independently (deterministic reduction-free
// parallelism; each block is one single-threaded Eigen product).
void gemm_rows(const Matrix& h, const Matrix& rho, Matrix& out, int threads) {
  const int n = static_cast<int>(h.rows());
  const int n_blocks = (n + kRowBlock - 1) / kRowBlock;
  if (threads <= 1 || n_blocks == 1) {
    out.noalias() = h * rho;
    return;
  }
  parallel_for(static_cast<std::size_t>(n_blocks), threads, [&](std::size_t b) {
    const int r0 = static_cast<int>(b) * kRowBlock;
    const int rows = std::min(kRowBlock, n - r0);
    out.middleRows(r0, rows).noalias() = h.middleRows(r0, rows) * rho;
  });
}

void rhs_into(const SystemModel& model, const Matrix& rho, Matrix& scratch, Matrix& out,
              int threads) {
  // -i[H, rho] = -i (H rho - (H rho)^dagger) for Hermitian rho.
  gemm_rows(model.hamiltonian, rho, scratch, threads);
  out = Complex(0.0, -1.0) * (scratch - scratch.adjoint());
  if (model.lambda != 0.0) {
    out.array() += model.lambda * (model.bank.pair_overlap.array() * rho.array() - rho.array());
  }
}

}  // namespace

Matrix lindblad_rhs(const SystemModel& model, const Matrix& rho) {
  if (rho.rows() != model.hamiltonian.rows() || rho.cols() != model.hamiltonian.cols()) {
    throw DimensionMismatch("lindblad_rhs: rho dimension differs from model");
  }
  Matrix scratch(rho.rows(), rho.cols()), out(rho.rows(), rho.cols());
  rhs_into(model, rho, scratch, out, 1);
  return out;
}

MasterTrajectory evolve_master(const SystemModel& model, const DensityMatrix& rho0,
                               double t_final, double dt, double output_dt, int threads) {
  if (rho0.rows() != model.hamiltonian.rows()) {
    throw DimensionMismatch("evolve_master: rho0 dimension differs from model");
  }
  if (!(dt > 0.0) || !(output_dt > 0.0) || !(t_final > 0.0)) {
    throw InvalidArgument("evolve_master: times and steps must be positive");
  }
  if (model.lambda > 0.0 && dt > 0.1 / model.lambda) {
    throw StepTooLarge("evolve_master: dt exceeds 0.1/lambda");
  }
  const double h_norm = SpectralPropagator(model.hamiltonian).spectral_norm();
  if (h_norm > 0.0 && dt > 0.1 / h_norm) {
    throw StepTooLarge("evolve_master: dt exceeds 0.1/||H||");
  }

  const int steps_per_output = std::max(1, static_cast<int>(std::lround(output_dt / dt)));
  const double h = output_dt / steps_per_output;
  const int n_outputs = static_cast<int>(std::floor(t_final / output_dt + 1e-9));

  const int n = static_cast<int>(rho0.rows());
  Matrix rho = rho0;
  Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), stage(n, n), scratch(n, n);

  MasterTrajectory out;
  out.times.reserve(n_outputs + 1);
  out.states.reserve(n_outputs + 1);

  auto record = [&](double t) {
    if (hermiticity_deviation(rho) > 1e-10) {
      throw NotHermitian("evolve_master: Hermiticity drifted above 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw EigenFailure("evolve_master: eigensolver failed");
    if (solver.eigenvalues().minCoeff() < -1e-6) {
      throw PositivityLost("evolve_master: negative eigenvalue, dt too large");
    }
    out.times.push_back(t);
    out.states.push_back(rho);
  };

  record(0.0);
  for (int k = 1; k <= n_outputs; ++k) {
    for (int s = 0; s < steps_per_output; ++s) {
      rhs_into(model, rho, scratch, k1, threads);
      stage = rho + (0.5 * h) * k1;
      rhs_into(model, stage, scratch, k2, threads);
      stage = rho + (0.5 * h) * k2;
      rhs_into(model, stage, scratch, k3, threads);
      stage = rho + h * k3;
      rhs_into(model, stage, scratch, k4, threads);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    record(k * output_dt);
  }
  return out;
}

double decoherence_rate(double lambda, double r_c, double separation) {
  if (lambda < 0.0 || !(r_c > 0.0) || separation < 0.0) {
    throw InvalidArgument("decoherence_rate: bad arguments");
  }
  return lambda * (1.0 - std::exp(-separation * separation / (4.0 * r_c * r_c)));
}

}  // namespace unravel
