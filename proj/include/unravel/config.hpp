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
#include <string>
#include <vector>

#include "unravel/ensemble.hpp"

namespace unravel {

/// Scenario description parsed from a `key = value` text document.
/// Unknown keys are rejected with a position-annotated error (plus a spelling
/// suggestion); out-of-range values raise ValidationError naming the field.
struct ScenarioConfig {
  std::string scenario = "cat";
  std::uint64_t seed = 1;

  // grid
  int n_sites = 64;
  double x_min = -8.0;
  double x_max = 8.0;

  // model
  double lambda = 1.0;
  double r_c = 1.0;
  double mass = 2000.0;

  // initial state: gaussian | cat | basis | uniform
  std::string state = "cat";
  double x0 = 0.0;
  double p0 = 0.0;
  double sigma = 0.3;
  double x1 = -2.0;
  double x2 = 2.0;
  int basis_site = -1;  // -1 selects the middle site

  // run
  std::vector<Method> methods = {Method::jump, Method::diffusive};
  int n_traj = 2000;
  double t_final = 5.0;
  double dt = 0.005;
  double output_dt = 0.1;
  double tau = 0.005;
  int threads = 1;
  std::string out_dir = "out";
  bool dump_rho = false;

  // the oracle runs with lambda * oracle_lambda_scale; values != 1 are the
  // deliberate-mismatch negative control
  double oracle_lambda_scale = 1.0;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

/// Lossless round-trip serialization (doubles at 17 significant digits).
std::string config_to_text(const ScenarioConfig& config);

/// `key = value` lines echoed into the header of every output file.
std::vector<std::string> config_echo_lines(const ScenarioConfig& config);

}  // namespace unravel
