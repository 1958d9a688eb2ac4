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

#include "unravel/config.hpp"
#include "unravel/ensemble.hpp"

namespace unravel {

/// Everything a scenario run produced, returned so tests can inspect it; the
/// same data is written to out_dir as CSV/report files.
struct ScenarioArtifacts {
  MasterTrajectory oracle;
  std::vector<EnsembleRecord> records;
  Report report;
  int exit_code = 0;  // 0 iff every equivalence check passed
};

SystemModel model_from_config(const ScenarioConfig& config);
WaveFunction state_from_config(const ScenarioConfig& config, const SystemModel& model);

/// Oracle integration on the configured lattice (lambda scaled by
/// oracle_lambda_scale, the negative-control hook).
MasterTrajectory run_oracle(const ScenarioConfig& config);

/// Full pipeline: oracle, each requested ensemble, equivalence report and the
/// scenario-specific extras (heating fit for "sound", proper-mixture test for
/// "gisin", decoherence fit for "cat"). Writes observables.csv,
/// equivalence.txt and optional density-matrix dumps under out_dir when
/// write_files is set.
ScenarioArtifacts run_scenario(const ScenarioConfig& config, bool write_files = true);

/// Time-series CSV with columns t,name,mean,stderr,method and the config
/// echoed as a comment header.
void write_series_csv(const ScenarioConfig& config, const MasterTrajectory* oracle,
                      const std::vector<EnsembleRecord>& records, std::ostream& out);

/// Flat real/imag table of every recorded density matrix: t,i,j,re,im.
void write_rho_csv(const ScenarioConfig& config, const std::vector<double>& times,
                   const std::vector<DensityMatrix>& states, std::ostream& out);

}  // namespace unravel
