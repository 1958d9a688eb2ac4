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

#include "unravel/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "unravel/errors.hpp"
#include "unravel/observables.hpp"
#include "unravel/stats.hpp"
#include "unravel/traj_jump.hpp"

namespace unravel {

SystemModel model_from_config(const ScenarioConfig& config) {
  const GridSpec grid = build_grid(config.n_sites, config.x_min, config.x_max);
  return make_model(grid, config.lambda, config.r_c, config.mass);
}

WaveFunction state_from_config(const ScenarioConfig& config, const SystemModel& model) {
  if (config.state == "gaussian") {
    return gaussian_packet(model.grid, config.x0, config.p0, config.sigma);
  }
  if (config.state == "cat") {
    return cat_state(model.grid, config.x1, config.x2, config.sigma);
  }
  if (config.state == "basis") {
    const int site = config.basis_site < 0 ? model.grid.n_sites / 2 : config.basis_site;
    return basis_state(model.grid, site);
  }
  return uniform_state(model.grid);
}

MasterTrajectory run_oracle(const ScenarioConfig& config) {
  const GridSpec grid = build_grid(config.n_sites, config.x_min, config.x_max);
  const SystemModel oracle_model = make_model(grid, config.lambda * config.oracle_lambda_scale,
                                              config.r_c, config.mass);
  const WaveFunction psi0 = state_from_config(config, oracle_model);
  const DensityMatrix rho0 = psi0.amplitudes * psi0.amplitudes.adjoint();
  return evolve_master(oracle_model, rho0, config.t_final, config.dt, config.output_dt,
                       config.threads);
}

namespace {

EnsembleParams params_from_config(const ScenarioConfig& config, Method method) {
  EnsembleParams params;
  params.method = method;
  params.n_trajectories = config.n_traj;
  params.t_final = config.t_final;
  params.dt = config.dt;
  params.output_dt = config.output_dt;
  params.tau = config.tau;
  params.seed = config.seed;
  params.threads = config.threads;
  return params;
}

// "cat" extra: exponential fit of the oracle's cross-branch coherence decay
// against the closed-form rate. The fit window stops once the block norm has
// decayed three e-folds so the tail does not dominate the regression.
void cat_extras(const ScenarioConfig& config, const SystemModel& model,
                const MasterTrajectory& oracle, Report& report) {
  const double boundary = model.grid.midpoint();
  const double expected = decoherence_rate(config.lambda * config.oracle_lambda_scale,
                                           config.r_c, std::abs(config.x2 - config.x1));
  std::vector<double> ts, logs;
  const double initial = coherence_block_norm(model.grid, oracle.states.front(), boundary);
  for (std::size_t k = 0; k < oracle.times.size(); ++k) {
    const double norm = coherence_block_norm(model.grid, oracle.states[k], boundary);
    if (norm < initial * std::exp(-3.0)) break;
    ts.push_back(oracle.times[k]);
    logs.push_back(std::log(norm));
  }
  if (ts.size() < 3) {
    report.add_scalar_row("coherence_decay_fit_points", static_cast<double>(ts.size()), 3.0,
                          false);
    return;
  }
  const double fitted = -linear_fit(ts, logs).slope;
  const double relative = std::abs(fitted - expected) / expected;
  report.add_scalar_row("coherence_decay_rate_rel_error", relative, 0.10, relative <= 0.10);
}

// "sound" extra: heating slope against lambda/(4 m r_c^2) plus the per-jump
// kick consistency (lambda x mean kick == slope).
void sound_extras(const ScenarioConfig& config, const SystemModel& model,
                  const MasterTrajectory& oracle, Report& report) {
  const double lambda = config.lambda * config.oracle_lambda_scale;
  const double expected = lambda / (4.0 * config.mass * config.r_c * config.r_c);
  const double slope = heating_rate(model, oracle);
  if (lambda == 0.0) {
    report.add_scalar_row("heating_slope", std::abs(slope), 1e-10, std::abs(slope) <= 1e-10);
    return;
  }
  const double slope_err = std::abs(slope - expected) / expected;
  report.add_scalar_row("heating_slope_rel_error", slope_err, 0.02, slope_err <= 0.02);

  const WaveFunction psi0 = state_from_config(config, model);
  RandomStream rng(config.seed, (1ULL << 62) + 1);
  const int n_kicks = 10000;
  double kick_sum = 0.0;
  for (int i = 0; i < n_kicks; ++i) {
    const int f = sample_collapse_center(rng, model.bank, psi0);
    kick_sum += jump_energy_kick(model, psi0, f);
  }
  const double kick_rate = lambda * kick_sum / n_kicks;
  const double kick_err = std::abs(kick_rate - slope) / slope;
  report.add_scalar_row("jump_kick_vs_slope_rel_error", kick_err, 0.10, kick_err <= 0.10);
}

// "gisin" extra: the canonical basis-pair vs plus/minus-pair proper mixtures,
// realized on two interior sites of the configured grid.
void gisin_extras(const ScenarioConfig& config, const SystemModel& model, Report& report) {
  const int n = model.grid.n_sites;
  const int site_a = n / 2 - 2;
  const int site_b = n / 2 + 2;
  const WaveFunction zero = basis_state(model.grid, site_a);
  const WaveFunction one = basis_state(model.grid, site_b);
  WaveFunction plus, minus;
  plus.amplitudes = (zero.amplitudes + one.amplitudes) / std::sqrt(2.0);
  minus.amplitudes = (zero.amplitudes - one.amplitudes) / std::sqrt(2.0);

  const std::vector<MixtureComponent> basis_pair = {{0.5, zero}, {0.5, one}};
  const std::vector<MixtureComponent> rotated_pair = {{0.5, plus}, {0.5, minus}};
  for (Method method : config.methods) {
    EnsembleParams params = params_from_config(config, method);
    report.append(gisin_mixture_test(model, basis_pair, rotated_pair, params));
  }
}

}  // namespace

void write_series_csv(const ScenarioConfig& config, const MasterTrajectory* oracle,
                      const std::vector<EnsembleRecord>& records, std::ostream& out) {
  for (const auto& line : config_echo_lines(config)) out << "# " << line << "\n";
  out << "t,name,mean,stderr,method\n";
  if (oracle) {
    const SystemModel model = model_from_config(config);
    const ObservableSet observables(model);
    const auto& names = ObservableSet::names();
    for (std::size_t k = 0; k < oracle->times.size(); ++k) {
      const auto values = observables.evaluate(oracle->states[k]);
      for (std::size_t o = 0; o < names.size(); ++o) {
        out << format_double(oracle->times[k]) << ',' << names[o] << ','
            << format_double(values[o]) << ",0,oracle\n";
      }
    }
  }
  for (const auto& record : records) {
    const std::string& method = method_name(record.method);
    for (const auto& [name, series] : record.observable_means) {
      const auto& errors = record.observable_stderrs.at(name);
      for (std::size_t k = 0; k < record.times.size(); ++k) {
        out << format_double(record.times[k]) << ',' << name << ','
            << format_double(series[k]) << ',' << format_double(errors[k]) << ',' << method
            << "\n";
      }
    }
  }
}

void write_rho_csv(const ScenarioConfig& config, const std::vector<double>& times,
                   const std::vector<DensityMatrix>& states, std::ostream& out) {
  for (const auto& line : config_echo_lines(config)) out << "# " << line << "\n";
  out << "t,i,j,re,im\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    const DensityMatrix& rho = states[k];
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        out << format_double(times[k]) << ',' << i << ',' << j << ','
            << format_double(rho(i, j).real()) << ',' << format_double(rho(i, j).imag())
            << "\n";
      }
    }
  }
}

ScenarioArtifacts run_scenario(const ScenarioConfig& config, bool write_files) {
  ScenarioArtifacts artifacts;
  const SystemModel model = model_from_config(config);
  const WaveFunction psi0 = state_from_config(config, model);

  artifacts.oracle = run_oracle(config);

  artifacts.records.reserve(config.methods.size());
  for (Method method : config.methods) {
    artifacts.records.push_back(run_ensemble(model, psi0, params_from_config(config, method)));
  }

  artifacts.report =
      equivalence_report(artifacts.records, artifacts.oracle, &model, config.threads);
  artifacts.report.echo = config_echo_lines(config);

  if (config.scenario == "cat" || config.scenario == "negative-control" ||
      config.scenario == "control") {
    if (config.state == "cat") cat_extras(config, model, artifacts.oracle, artifacts.report);
  } else if (config.scenario == "sound") {
    sound_extras(config, model, artifacts.oracle, artifacts.report);
  } else if (config.scenario == "gisin") {
    gisin_extras(config, model, artifacts.report);
  }

  artifacts.exit_code = artifacts.report.pass() ? 0 : 1;

  if (write_files) {
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    {
      std::ofstream out(dir / "observables.csv");
      write_series_csv(config, &artifacts.oracle, artifacts.records, out);
    }
    {
      std::ofstream out(dir / "equivalence.txt");
      write_report(artifacts.report, out);
    }
    if (config.dump_rho) {
      {
        std::ofstream out(dir / "rho_oracle.csv");
        write_rho_csv(config, artifacts.oracle.times, artifacts.oracle.states, out);
      }
      for (const auto& record : artifacts.records) {
        std::ofstream out(dir / ("rho_" + method_name(record.method) + ".csv"));
        write_rho_csv(config, record.times, record.mean_rho, out);
      }
    }
  }
  return artifacts;
}

}  // namespace unravel
