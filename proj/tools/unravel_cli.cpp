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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "unravel/config.hpp"
#include "unravel/errors.hpp"
#include "unravel/scenario.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::int64_t seed = -1;
  int threads = 0;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--config", options.config_path, "scenario config file")->required();
  cmd->add_option("--seed", options.seed, "override the config seed");
  cmd->add_option("--threads", options.threads, "override the worker count");
  cmd->add_option("--out-dir", options.out_dir, "override the output directory");
}

unravel::ScenarioConfig resolve(const CommonOptions& options) {
  unravel::ScenarioConfig config = unravel::load_config_file(options.config_path);
  if (options.seed >= 0) config.seed = static_cast<std::uint64_t>(options.seed);
  if (options.threads > 0) config.threads = options.threads;
  if (!options.out_dir.empty()) config.out_dir = options.out_dir;
  return config;
}

std::filesystem::path prepare_out_dir(const unravel::ScenarioConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_oracle_command(const unravel::ScenarioConfig& config) {
  unravel::MasterTrajectory oracle = unravel::run_oracle(config);
  const auto dir = prepare_out_dir(config);
  std::ofstream out(dir / "observables.csv");
  unravel::write_series_csv(config, &oracle, {}, out);
  if (config.dump_rho) {
    std::ofstream rho_out(dir / "rho_oracle.csv");
    unravel::write_rho_csv(config, oracle.times, oracle.states, rho_out);
  }
  std::cout << "oracle: " << oracle.times.size() << " samples written to " << dir << "\n";
  return 0;
}

int run_ensemble_command(const unravel::ScenarioConfig& config) {
  const unravel::SystemModel model = unravel::model_from_config(config);
  const unravel::WaveFunction psi0 = unravel::state_from_config(config, model);
  std::vector<unravel::EnsembleRecord> records;
  for (unravel::Method method : config.methods) {
    unravel::EnsembleParams params;
    params.method = method;
    params.n_trajectories = config.n_traj;
    params.t_final = config.t_final;
    params.dt = config.dt;
    params.output_dt = config.output_dt;
    params.tau = config.tau;
    params.seed = config.seed;
    params.threads = config.threads;
    records.push_back(unravel::run_ensemble(model, psi0, params));
  }
  const auto dir = prepare_out_dir(config);
  std::ofstream out(dir / "observables.csv");
  unravel::write_series_csv(config, nullptr, records, out);
  std::cout << "ensemble: " << records.size() << " method(s), " << config.n_traj
            << " trajectories each, written to " << dir << "\n";
  return 0;
}

int run_repeated_command(unravel::ScenarioConfig config) {
  config.methods = {unravel::Method::repeated_z, unravel::Method::repeated_x};
  return run_ensemble_command(config);
}

int run_compare_command(const unravel::ScenarioConfig& config, bool scenario_extras) {
  unravel::ScenarioConfig resolved = config;
  if (!scenario_extras) resolved.scenario = "compare";
  const unravel::ScenarioArtifacts artifacts = unravel::run_scenario(resolved);
  std::cout << (artifacts.report.pass() ? "all equivalence checks passed"
                                        : "equivalence checks FAILED")
            << " (report in " << resolved.out_dir << "/equivalence.txt)\n";
  return artifacts.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GRW collapse-model laboratory: one master equation, three stochastic stories"};
  app.require_subcommand(1);

  CommonOptions options;
  CLI::App* oracle = app.add_subcommand("oracle", "integrate the master equation only");
  CLI::App* ensemble = app.add_subcommand("ensemble", "run the configured trajectory ensembles");
  CLI::App* repeated = app.add_subcommand("repeated", "run the repeated-interaction ensembles");
  CLI::App* compare =
      app.add_subcommand("compare", "oracle + ensembles + equivalence report (exit 0 iff pass)");
  CLI::App* scenario =
      app.add_subcommand("scenario", "full pipeline including scenario-specific extras");
  for (CLI::App* cmd : {oracle, ensemble, repeated, compare, scenario}) {
    add_common(cmd, options);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const unravel::ScenarioConfig config = resolve(options);
    if (oracle->parsed()) return run_oracle_command(config);
    if (ensemble->parsed()) return run_ensemble_command(config);
    if (repeated->parsed()) return run_repeated_command(config);
    if (compare->parsed()) return run_compare_command(config, false);
    return run_compare_command(config, true);
  } catch (const unravel::SimulationError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
}
