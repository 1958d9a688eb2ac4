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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unravel/lindblad.hpp"
#include "unravel/model.hpp"
#include "unravel/report.hpp"
#include "unravel/rng.hpp"

namespace unravel {

enum class Method { jump, diffusive, repeated_z, repeated_x };

const std::string& method_name(Method m);

struct EnsembleParams {
  Method method = Method::jump;
  int n_trajectories = 2;
  double t_final = 1.0;
  double dt = 0.005;        // diffusive step (ignored by the other engines)
  double output_dt = 0.1;
  double tau = 0.005;       // repeated-interaction collision duration
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Discrete mixture of initial states; each trajectory draws its component
/// from its own stream before the dynamics starts.
using MixtureComponent = std::pair<double, WaveFunction>;

/// Trajectory-averaged state and observable statistics on the output lattice.
///
/// Trajectories are processed in fixed-size chunks (a pure function of the
/// trajectory count, never of the worker count); each chunk accumulates its
/// partial sums in trajectory order and chunks are reduced in chunk order, so
/// the record is bit-identical for every parallelism degree. The per-chunk
/// projector sums are retained for the bootstrap error estimate.
struct EnsembleRecord {
  std::vector<double> times;
  std::vector<DensityMatrix> mean_rho;
  std::map<std::string, std::vector<double>> observable_means;
  std::map<std::string, std::vector<double>> observable_stderrs;
  int n_trajectories = 0;
  Method method = Method::jump;
  std::uint64_t seed = 0;

  std::vector<int> chunk_sizes;
  std::vector<std::vector<Matrix>> chunk_rho_sums;  // [chunk][time]
};

EnsembleRecord run_ensemble(const SystemModel& model, const WaveFunction& psi0,
                            const EnsembleParams& params);

EnsembleRecord run_ensemble(const SystemModel& model,
                            const std::vector<MixtureComponent>& mixture,
                            const EnsembleParams& params);

/// (1/2) sum |eigenvalues(rho - sigma)|; in [0, 1] for density matrices.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Monte Carlo error scale of the averaged state at one output time:
/// the RMS trace distance between chunk-bootstrap resamples of the mean and
/// the full-sample mean (>= 128 resamples, deterministic resampling streams).
/// Scales as 1/sqrt(m).
double mc_error(const EnsembleRecord& record, int t_index);

/// Per time and per pair (each record vs the oracle, record vs record):
/// trace distance against the 3 sigma_MC threshold, plus observable-level
/// comparisons (energy, branch weights) when a model is supplied. The
/// threshold has a 1e-9 floor so deterministic runs (lambda = 0) compare
/// meaningfully.
Report equivalence_report(const std::vector<EnsembleRecord>& records,
                          const MasterTrajectory& oracle, const SystemModel* model = nullptr,
                          int threads = 1);

/// Runs two proper mixtures with identical initial density matrices and
/// reports the trace distance of their averages over time against the
/// combined 3 sigma threshold. Ensemble b uses seed+1 so the two ensembles
/// are statistically independent.
Report gisin_mixture_test(const SystemModel& model,
                          const std::vector<MixtureComponent>& ensemble_a,
                          const std::vector<MixtureComponent>& ensemble_b,
                          const EnsembleParams& params);

}  // namespace unravel
