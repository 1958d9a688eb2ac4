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

#include "unravel/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "unravel/errors.hpp"
#include "unravel/observables.hpp"
#include "unravel/repeated.hpp"
#include "unravel/threading.hpp"
#include "unravel/traj_diffusive.hpp"
#include "unravel/traj_jump.hpp"
#include "unravel/trajectory.hpp"

namespace unravel {

namespace {

constexpr int kTargetChunks = 64;
constexpr int kBootstrapResamples = 128;
constexpr double kDeterministicFloor = 1e-9;

struct ChunkAccumulator {
  std::vector<Matrix> rho_sum;                  // per output time
  std::vector<std::vector<double>> obs_sum;     // [observable][time]
  std::vector<std::vector<double>> obs_sumsq;   // [observable][time]

  ChunkAccumulator(int n_times, int dim, int n_obs) {
    rho_sum.assign(n_times, Matrix::Zero(dim, dim));
    obs_sum.assign(n_obs, std::vector<double>(n_times, 0.0));
    obs_sumsq.assign(n_obs, std::vector<double>(n_times, 0.0));
  }
};

// Shared per-run engine state, built once and read concurrently.
struct EngineContext {
  const SystemModel* model;
  EnsembleParams params;
  SpectralPropagator propagator;      // jump flights
  UnitaryPropagator u_dt;             // diffusive fixed step
  CollisionSet collisions;            // repeated modes
  int rounds_per_output = 0;

  EngineContext(const SystemModel& m, const EnsembleParams& p)
      : model(&m), params(p), propagator(m.hamiltonian) {
    if (p.method == Method::diffusive) {
      u_dt = propagator.propagator(p.dt);
    } else if (p.method == Method::repeated_z || p.method == Method::repeated_x) {
      const double ratio = p.output_dt / p.tau;
      rounds_per_output = static_cast<int>(std::lround(ratio));
      if (rounds_per_output < 1 || std::abs(ratio - rounds_per_output) > 1e-9) {
        throw InvalidArgument("run_ensemble: output_dt must be an integer multiple of tau");
      }
      collisions = build_collision_set(m, p.tau);
    }
  }

  void run_trajectory(const WaveFunction& psi0, RandomStream& rng,
                      const SampleSink& sink) const {
    switch (params.method) {
      case Method::jump:
        run_jump_core(*model, propagator, psi0, params.t_final, params.output_dt, rng, sink,
                      nullptr);
        break;
      case Method::diffusive:
        run_diffusive_core(*model, u_dt, psi0, params.t_final, params.dt, params.output_dt,
                           rng, sink);
        break;
      case Method::repeated_z:
      case Method::repeated_x: {
        const int n_outputs =
            static_cast<int>(std::floor(params.t_final / params.output_dt + 1e-9));
        const MeasureBasis basis = params.method == Method::repeated_z
                                       ? MeasureBasis::z_basis
                                       : MeasureBasis::x_basis;
        run_repeated_measured_core(collisions, psi0, n_outputs * rounds_per_output,
                                   rounds_per_output, basis, rng, sink, nullptr);
        break;
      }
    }
  }
};

int pick_component(RandomStream& rng, const std::vector<MixtureComponent>& mixture) {
  if (mixture.size() == 1) return 0;
  const double u = rng.uniform01();
  double cumulative = 0.0;
  for (std::size_t c = 0; c < mixture.size(); ++c) {
    cumulative += mixture[c].first;
    if (u < cumulative) return static_cast<int>(c);
  }
  return static_cast<int>(mixture.size()) - 1;
}

void validate_mixture(const std::vector<MixtureComponent>& mixture) {
  if (mixture.empty()) throw InvalidArgument("run_ensemble: empty initial mixture");
  double total = 0.0;
  for (const auto& [w, psi] : mixture) {
    if (!(w > 0.0)) throw InvalidArgument("run_ensemble: mixture weights must be positive");
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
      throw NotNormalized("run_ensemble: mixture component not normalized");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("run_ensemble: mixture weights must sum to one");
  }
}

DensityMatrix mixture_density(const std::vector<MixtureComponent>& mixture) {
  const int n = mixture.front().second.dim();
  DensityMatrix rho = DensityMatrix::Zero(n, n);
  for (const auto& [w, psi] : mixture) {
    rho.noalias() += w * (psi.amplitudes * psi.amplitudes.adjoint());
  }
  return rho;
}

}  // namespace

const std::string& method_name(Method m) {
  static const std::string kNames[] = {"jump", "diffusive", "repeated_z", "repeated_x"};
  return kNames[static_cast<int>(m)];
}

EnsembleRecord run_ensemble(const SystemModel& model, const WaveFunction& psi0,
                            const EnsembleParams& params) {
  return run_ensemble(model, std::vector<MixtureComponent>{{1.0, psi0}}, params);
}

EnsembleRecord run_ensemble(const SystemModel& model,
                            const std::vector<MixtureComponent>& mixture,
                            const EnsembleParams& params) {
  const int m = params.n_trajectories;
  if (m < 1) throw InvalidArgument("run_ensemble: need at least one trajectory");
  validate_mixture(mixture);
  for (const auto& [w, psi] : mixture) {
    if (psi.dim() != model.grid.n_sites) {
      throw DimensionMismatch("run_ensemble: state dimension differs from model");
    }
  }

  const EngineContext context(model, params);
  const ObservableSet observables(model);
  const auto& obs_names = ObservableSet::names();
  const int n_obs = static_cast<int>(obs_names.size());
  const std::vector<double> times = output_lattice(params.t_final, params.output_dt);
  const int n_times = static_cast<int>(times.size());
  const int dim = model.grid.n_sites;

  // Chunk layout depends only on m, so reductions are scheduling independent.
  const int chunk_size = (m + kTargetChunks - 1) / kTargetChunks;
  const int n_chunks = (m + chunk_size - 1) / chunk_size;

  std::vector<ChunkAccumulator> chunks(
      static_cast<std::size_t>(n_chunks), ChunkAccumulator(n_times, dim, n_obs));

  parallel_for(static_cast<std::size_t>(n_chunks), params.threads, [&](std::size_t c) {
    ChunkAccumulator& accumulator = chunks[c];
    const int first = static_cast<int>(c) * chunk_size;
    const int last = std::min(m, first + chunk_size);
    WaveFunction scratch;
    for (int i = first; i < last; ++i) {
      RandomStream rng(params.seed, static_cast<std::uint64_t>(i));
      const int component = pick_component(rng, mixture);
      auto sink = [&](int tick, double, const Vector& psi) {
        accumulator.rho_sum[tick].noalias() += psi * psi.adjoint();
        scratch.amplitudes = psi;
        const auto values = observables.evaluate(scratch);
        for (int o = 0; o < n_obs; ++o) {
          accumulator.obs_sum[o][tick] += values[o];
          accumulator.obs_sumsq[o][tick] += values[o] * values[o];
        }
      };
      context.run_trajectory(mixture[component].second, rng, sink);
    }
  });

  EnsembleRecord record;
  record.times = times;
  record.n_trajectories = m;
  record.method = params.method;
  record.seed = params.seed;
  record.chunk_sizes.resize(n_chunks);
  record.chunk_rho_sums.reserve(n_chunks);

  std::vector<Matrix> total_rho(n_times, Matrix::Zero(dim, dim));
  std::vector<std::vector<double>> total_obs(n_obs, std::vector<double>(n_times, 0.0));
  std::vector<std::vector<double>> total_obs_sq(n_obs, std::vector<double>(n_times, 0.0));
  for (int c = 0; c < n_chunks; ++c) {
    record.chunk_sizes[c] = std::min(m, (c + 1) * chunk_size) - c * chunk_size;
    for (int k = 0; k < n_times; ++k) total_rho[k] += chunks[c].rho_sum[k];
    for (int o = 0; o < n_obs; ++o) {
      for (int k = 0; k < n_times; ++k) {
        total_obs[o][k] += chunks[c].obs_sum[o][k];
        total_obs_sq[o][k] += chunks[c].obs_sumsq[o][k];
      }
    }
    record.chunk_rho_sums.push_back(std::move(chunks[c].rho_sum));
  }

  record.mean_rho.resize(n_times);
  for (int k = 0; k < n_times; ++k) record.mean_rho[k] = total_rho[k] / double(m);
  for (int o = 0; o < n_obs; ++o) {
    auto& means = record.observable_means[obs_names[o]];
    auto& errors = record.observable_stderrs[obs_names[o]];
    means.resize(n_times);
    errors.resize(n_times);
    for (int k = 0; k < n_times; ++k) {
      const double mean = total_obs[o][k] / m;
      means[k] = mean;
      if (m > 1) {
        double var = (total_obs_sq[o][k] - m * mean * mean) / (m - 1);
        errors[k] = std::sqrt(std::max(0.0, var) / m);
      } else {
        errors[k] = 0.0;
      }
    }
  }
  return record;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionMismatch("trace_distance: dimension mismatch");
  }
  Matrix delta = rho - sigma;
  delta = 0.5 * (delta + delta.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(delta, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigenFailure("trace_distance: eigensolver failed");
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double mc_error(const EnsembleRecord& record, int t_index) {
  if (record.n_trajectories < 10) {
    throw TooFewTrajectories("mc_error: need at least 10 trajectories");
  }
  if (t_index < 0 || t_index >= static_cast<int>(record.times.size())) {
    throw InvalidArgument("mc_error: time index out of range");
  }
  const int n_chunks = static_cast<int>(record.chunk_sizes.size());
  const Matrix& mean = record.mean_rho[t_index];

  // Resampling stream in a key range disjoint from trajectory stream ids.
  const std::uint64_t tag = (1ULL << 63) | (static_cast<std::uint64_t>(record.method) << 32) |
                            static_cast<std::uint64_t>(t_index);
  RandomStream rng(record.seed, tag);

  Matrix resampled(mean.rows(), mean.cols());
  double sum_sq = 0.0;
  for (int b = 0; b < kBootstrapResamples; ++b) {
    resampled.setZero();
    int size = 0;
    for (int draw = 0; draw < n_chunks; ++draw) {
      int c = std::min(n_chunks - 1, static_cast<int>(rng.uniform01() * n_chunks));
      resampled += record.chunk_rho_sums[c][t_index];
      size += record.chunk_sizes[c];
    }
    const double d = trace_distance(resampled / double(size), mean);
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq / kBootstrapResamples);
}

namespace {

void check_lattice(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw LatticeMismatch("records disagree on the time lattice");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12) {
      throw LatticeMismatch("records disagree on the time lattice");
    }
  }
}

}  // namespace

Report equivalence_report(const std::vector<EnsembleRecord>& records,
                          const MasterTrajectory& oracle, const SystemModel* model,
                          int threads) {
  if (records.empty()) throw InvalidArgument("equivalence_report: no records");
  for (const auto& record : records) check_lattice(record.times, oracle.times);
  const int n_times = static_cast<int>(oracle.times.size());
  const int n_records = static_cast<int>(records.size());

  // sigma_MC for every (record, time), computed in parallel.
  std::vector<std::vector<double>> sigma(n_records, std::vector<double>(n_times, 0.0));
  parallel_for(static_cast<std::size_t>(n_records) * n_times, threads, [&](std::size_t idx) {
    const int r = static_cast<int>(idx) / n_times;
    const int k = static_cast<int>(idx) % n_times;
    sigma[r][k] = mc_error(records[r], k);
  });

  Report report;
  report.title = "unravel equivalence report";

  const std::vector<std::string> compared = {"energy", "weight_left", "weight_right"};
  for (int r = 0; r < n_records; ++r) {
    const auto& record = records[r];
    const std::string name = method_name(record.method);
    for (int k = 0; k < n_times; ++k) {
      const double d = trace_distance(record.mean_rho[k], oracle.states[k]);
      const double threshold = std::max(3.0 * sigma[r][k], kDeterministicFloor);
      report.add_state_row(oracle.times[k], name, "oracle", d, threshold);
    }
    if (model) {
      const ObservableSet observables(*model);
      const auto& obs_names = ObservableSet::names();
      for (int k = 0; k < n_times; ++k) {
        const auto oracle_values = observables.evaluate(oracle.states[k]);
        for (const auto& obs : compared) {
          const std::size_t o =
              std::find(obs_names.begin(), obs_names.end(), obs) - obs_names.begin();
          const double diff = std::abs(record.observable_means.at(obs)[k] - oracle_values[o]);
          const double threshold = std::max(3.0 * record.observable_stderrs.at(obs)[k],
                                            kDeterministicFloor);
          report.add_observable_row(oracle.times[k], name, obs, diff, threshold);
        }
      }
    }
  }

  for (int r = 0; r < n_records; ++r) {
    for (int s = r + 1; s < n_records; ++s) {
      const std::string name_r = method_name(records[r].method);
      const std::string name_s = method_name(records[s].method);
      for (int k = 0; k < n_times; ++k) {
        const double d = trace_distance(records[r].mean_rho[k], records[s].mean_rho[k]);
        const double combined = std::hypot(sigma[r][k], sigma[s][k]);
        report.add_state_row(oracle.times[k], name_r, name_s, d,
                             std::max(3.0 * combined, kDeterministicFloor));
      }
    }
  }
  return report;
}

Report gisin_mixture_test(const SystemModel& model,
                          const std::vector<MixtureComponent>& ensemble_a,
                          const std::vector<MixtureComponent>& ensemble_b,
                          const EnsembleParams& params) {
  validate_mixture(ensemble_a);
  validate_mixture(ensemble_b);
  const DensityMatrix rho_a = mixture_density(ensemble_a);
  const DensityMatrix rho_b = mixture_density(ensemble_b);
  if ((rho_a - rho_b).cwiseAbs().maxCoeff() > 1e-10) {
    throw UnequalInitialDensity("gisin_mixture_test: initial density matrices differ");
  }

  EnsembleParams params_b = params;
  params_b.seed = params.seed + 1;
  const EnsembleRecord record_a = run_ensemble(model, ensemble_a, params);
  const EnsembleRecord record_b = run_ensemble(model, ensemble_b, params_b);

  std::vector<double> sigma_a(record_a.times.size()), sigma_b(record_b.times.size());
  parallel_for(record_a.times.size() * 2, params.threads, [&](std::size_t idx) {
    const int k = static_cast<int>(idx / 2);
    if (idx % 2 == 0) {
      sigma_a[k] = mc_error(record_a, k);
    } else {
      sigma_b[k] = mc_error(record_b, k);
    }
  });

  Report report;
  report.title = "unravel proper-mixture indistinguishability report";
  const std::string label = method_name(params.method);
  for (std::size_t k = 0; k < record_a.times.size(); ++k) {
    const double d = trace_distance(record_a.mean_rho[k], record_b.mean_rho[k]);
    const double combined = std::hypot(sigma_a[k], sigma_b[k]);
    report.add_state_row(record_a.times[k], label + ":mixture_a", label + ":mixture_b", d,
                         std::max(3.0 * combined, kDeterministicFloor));
  }
  return report;
}

}  // namespace unravel
