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

#include "unravel/repeated.hpp"

#include <cmath>

#include "unravel/errors.hpp"
#include "unravel/observables.hpp"

namespace unravel {

namespace {

constexpr double kDiagonalTol = 1e-13;

bool nearly_diagonal(const Matrix& a) {
  for (int c = 0; c < a.cols(); ++c) {
    for (int r = 0; r < a.rows(); ++r) {
      if (r != c && std::abs(a(r, c)) > kDiagonalTol) return false;
    }
  }
  return true;
}

void apply_kraus(const Matrix& k, const Vector& d, bool diagonal, const Vector& psi,
                 Vector& out) {
  if (diagonal) {
    out = d.cwiseProduct(psi);
  } else {
    out.noalias() = k * psi;
  }
}

}  // namespace

KrausPair build_kraus_pair(const Matrix& hamiltonian, const Matrix& collision_op,
                           double lambda, double tau) {
  if (!(tau > 0.0)) throw InvalidArgument("build_kraus_pair: tau must be positive");
  if (lambda < 0.0) throw InvalidArgument("build_kraus_pair: lambda must be nonnegative");
  const int n = static_cast<int>(hamiltonian.rows());
  if (hamiltonian.cols() != n || collision_op.rows() != n || collision_op.cols() != n) {
    throw DimensionMismatch("build_kraus_pair: dimension mismatch");
  }
  if (hermiticity_deviation(collision_op) > 1e-10) {
    throw NotHermitian("build_kraus_pair: collision operator not Hermitian");
  }

  const double coupling = std::sqrt(lambda / tau);

  // Joint Hamiltonian on system (x) qubit, basis index 2j + s with s=0 for up.
  // H_tot = H (x) 1 + coupling * l_op (x) sigma_y.
  Matrix h_tot = Matrix::Zero(2 * n, 2 * n);
  const Complex i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Complex h = hamiltonian(j, k);
      const Complex c = coupling * collision_op(j, k);
      h_tot(2 * j, 2 * k) += h;
      h_tot(2 * j + 1, 2 * k + 1) += h;
      // sigma_y = [[0, -i], [i, 0]]
      h_tot(2 * j, 2 * k + 1) += -i_unit * c;
      h_tot(2 * j + 1, 2 * k) += i_unit * c;
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h_tot);
  if (solver.info() != Eigen::Success) throw EigenFailure("build_kraus_pair: eigensolver failed");
  Vector phases(2 * n);
  for (int j = 0; j < 2 * n; ++j) phases[j] = std::polar(1.0, -solver.eigenvalues()[j] * tau);
  Matrix v = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();

  KrausPair pair;
  pair.tau = tau;
  pair.coupling = coupling;
  pair.k_up.resize(n, n);
  pair.k_down.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      pair.k_up(j, k) = v(2 * j, 2 * k);
      pair.k_down(j, k) = v(2 * j + 1, 2 * k);
    }
  }
  pair.diagonal = nearly_diagonal(pair.k_up) && nearly_diagonal(pair.k_down);
  if (pair.diagonal) {
    pair.d_up = pair.k_up.diagonal();
    pair.d_down = pair.k_down.diagonal();
  }
  return pair;
}

KrausPair build_kraus_pair(const SystemModel& model, const Matrix& collision_op, double tau) {
  return build_kraus_pair(model.hamiltonian, collision_op, model.lambda, tau);
}

DensityMatrix channel_step(const KrausPair& kraus, const DensityMatrix& rho) {
  if (rho.rows() != kraus.k_up.rows() || rho.cols() != kraus.k_up.cols()) {
    throw DimensionMismatch("channel_step: dimension mismatch");
  }
  if (kraus.diagonal) {
    DensityMatrix out(rho.rows(), rho.cols());
    out.array() = (kraus.d_up * kraus.d_up.adjoint()).array() * rho.array() +
                  (kraus.d_down * kraus.d_down.adjoint()).array() * rho.array();
    return out;
  }
  return kraus.k_up * rho * kraus.k_up.adjoint() + kraus.k_down * rho * kraus.k_down.adjoint();
}

std::pair<WaveFunction, int> measured_step(const KrausPair& kraus, const WaveFunction& psi,
                                           MeasureBasis basis, RandomStream& rng) {
  if (psi.dim() != kraus.k_up.rows()) throw DimensionMismatch("measured_step: size mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw NotNormalized("measured_step: psi not normalized");
  }
  Vector up(psi.dim()), down(psi.dim());
  apply_kraus(kraus.k_up, kraus.d_up, kraus.diagonal, psi.amplitudes, up);
  apply_kraus(kraus.k_down, kraus.d_down, kraus.diagonal, psi.amplitudes, down);
  if (basis == MeasureBasis::x_basis) {
    // m_pm = (k_up pm k_down)/sqrt(2)
    Vector plus = (up + down) / std::sqrt(2.0);
    Vector minus = (up - down) / std::sqrt(2.0);
    up.swap(plus);
    down.swap(minus);
  }
  const double p_up = up.squaredNorm();
  const double p_down = down.squaredNorm();
  const double u = rng.uniform01() * (p_up + p_down);

  WaveFunction out;
  int outcome;
  if (u < p_up) {
    out.amplitudes = up / std::sqrt(p_up);
    outcome = 0;
  } else {
    out.amplitudes = down / std::sqrt(p_down);
    outcome = 1;
  }
  return {out, outcome};
}

CollisionSet build_collision_set(const SystemModel& model, double tau) {
  CollisionSet set;
  set.tau = tau;
  set.free_step = SpectralPropagator(model.hamiltonian).propagator(tau);
  const int n = model.grid.n_sites;
  const Matrix h_zero = Matrix::Zero(n, n);
  set.pairs.reserve(model.bank.n_ops());
  for (int f = 0; f < model.bank.n_ops(); ++f) {
    Matrix op = model.bank.profiles.row(f).transpose().cast<Complex>().asDiagonal();
    set.pairs.push_back(build_kraus_pair(h_zero, op, model.lambda, tau));
  }
  return set;
}

void run_repeated_measured_core(const CollisionSet& collisions, WaveFunction psi,
                                int n_rounds, int rounds_per_output, MeasureBasis basis,
                                RandomStream& rng, const SampleSink& on_sample,
                                AncillaOutcomeLog* log) {
  if (n_rounds < 1) throw InvalidArgument("run_repeated: need at least one round");
  if (rounds_per_output < 1) {
    throw InvalidArgument("run_repeated: rounds_per_output must be positive");
  }
  if (log) {
    log->basis = basis;
    log->outcomes.reserve(static_cast<std::size_t>(n_rounds) * collisions.pairs.size());
  }
  on_sample(0, 0.0, psi.amplitudes);
  int tick = 0;
  for (int round = 1; round <= n_rounds; ++round) {
    psi.amplitudes = collisions.free_step.matrix * psi.amplitudes;
    for (const auto& pair : collisions.pairs) {
      auto [next, outcome] = measured_step(pair, psi, basis, rng);
      psi = std::move(next);
      if (log) log->outcomes.push_back(static_cast<std::uint8_t>(outcome));
    }
    if (round % rounds_per_output == 0) {
      ++tick;
      on_sample(tick, round * collisions.tau, psi.amplitudes);
    }
  }
}

MasterTrajectory run_repeated_traced(const CollisionSet& collisions, const DensityMatrix& rho0,
                                     int n_rounds, int rounds_per_output) {
  if (n_rounds < 1) throw InvalidArgument("run_repeated: need at least one round");
  if (rounds_per_output < 1) {
    throw InvalidArgument("run_repeated: rounds_per_output must be positive");
  }
  MasterTrajectory out;
  DensityMatrix rho = rho0;
  out.times.push_back(0.0);
  out.states.push_back(rho);
  const Matrix& u = collisions.free_step.matrix;
  for (int round = 1; round <= n_rounds; ++round) {
    rho = u * rho * u.adjoint();
    for (const auto& pair : collisions.pairs) rho = channel_step(pair, rho);
    if (round % rounds_per_output == 0) {
      out.times.push_back(round * collisions.tau);
      out.states.push_back(rho);
    }
  }
  return out;
}

std::variant<TrajectoryRecord, MasterTrajectory> run_repeated(
    const SystemModel& model, const WaveFunction& psi0, int n_rounds, double tau,
    RepeatedMode mode, int rounds_per_output, RandomStream& rng) {
  CollisionSet collisions = build_collision_set(model, tau);

  if (mode == RepeatedMode::traced) {
    DensityMatrix rho0 = psi0.amplitudes * psi0.amplitudes.adjoint();
    return run_repeated_traced(collisions, rho0, n_rounds, rounds_per_output);
  }

  const MeasureBasis basis =
      mode == RepeatedMode::z_measured ? MeasureBasis::z_basis : MeasureBasis::x_basis;
  ObservableSet observables(model);

  TrajectoryRecord record;
  record.seed = rng.seed();
  record.trajectory_id = rng.stream_id();
  record.ancilla_log.emplace();

  WaveFunction last;
  auto sink = [&](int, double t, const Vector& psi) {
    record.times.push_back(t);
    last.amplitudes = psi;
    auto values = observables.evaluate(last);
    const auto& names = ObservableSet::names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      record.observables[names[i]].push_back(values[i]);
    }
  };
  run_repeated_measured_core(collisions, psi0, n_rounds, rounds_per_output, basis, rng, sink,
                             &*record.ancilla_log);
  record.final_state = last;
  return record;
}

}  // namespace unravel
