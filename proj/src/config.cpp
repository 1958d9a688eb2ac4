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

#include "unravel/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "unravel/errors.hpp"
#include "unravel/report.hpp"

namespace unravel {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double parse_double(const std::string& value, int line, const std::string& key) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) {
    std::ostringstream msg;
    msg << "line " << line << ": value '" << value << "' for key '" << key
        << "' is not a number";
    throw ParseError(msg.str());
  }
  return v;
}

long long parse_int(const std::string& value, int line, const std::string& key) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) {
    std::ostringstream msg;
    msg << "line " << line << ": value '" << value << "' for key '" << key
        << "' is not an integer";
    throw ParseError(msg.str());
  }
  return v;
}

Method parse_method(const std::string& name, int line) {
  if (name == "jump") return Method::jump;
  if (name == "diffusive") return Method::diffusive;
  if (name == "repeated_z") return Method::repeated_z;
  if (name == "repeated_x") return Method::repeated_x;
  std::ostringstream msg;
  msg << "line " << line << ": unknown method '" << name
      << "' (expected jump, diffusive, repeated_z or repeated_x)";
  throw ParseError(msg.str());
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  std::ostringstream msg;
  msg << "line " << line << ": value '" << value << "' for key '" << key << "' is not a bool";
  throw ParseError(msg.str());
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> kSetters = {
      {"scenario", [](ScenarioConfig& c, const std::string& v, int) { c.scenario = v; }},
      {"seed",
       [](ScenarioConfig& c, const std::string& v, int line) {
         c.seed = static_cast<std::uint64_t>(parse_int(v, line, "seed"));
       }},
      {"n_sites",
       [](ScenarioConfig& c, const std::string& v, int line) {
         c.n_sites = static_cast<int>(parse_int(v, line, "n_sites"));
       }},
      {"x_min", [](ScenarioConfig& c, const std::string& v, int l) { c.x_min = parse_double(v, l, "x_min"); }},
      {"x_max", [](ScenarioConfig& c, const std::string& v, int l) { c.x_max = parse_double(v, l, "x_max"); }},
      {"lambda", [](ScenarioConfig& c, const std::string& v, int l) { c.lambda = parse_double(v, l, "lambda"); }},
      {"r_c", [](ScenarioConfig& c, const std::string& v, int l) { c.r_c = parse_double(v, l, "r_c"); }},
      {"mass", [](ScenarioConfig& c, const std::string& v, int l) { c.mass = parse_double(v, l, "mass"); }},
      {"state", [](ScenarioConfig& c, const std::string& v, int) { c.state = v; }},
      {"x0", [](ScenarioConfig& c, const std::string& v, int l) { c.x0 = parse_double(v, l, "x0"); }},
      {"p0", [](ScenarioConfig& c, const std::string& v, int l) { c.p0 = parse_double(v, l, "p0"); }},
      {"sigma", [](ScenarioConfig& c, const std::string& v, int l) { c.sigma = parse_double(v, l, "sigma"); }},
      {"x1", [](ScenarioConfig& c, const std::string& v, int l) { c.x1 = parse_double(v, l, "x1"); }},
      {"x2", [](ScenarioConfig& c, const std::string& v, int l) { c.x2 = parse_double(v, l, "x2"); }},
      {"basis_site",
       [](ScenarioConfig& c, const std::string& v, int line) {
         c.basis_site = static_cast<int>(parse_int(v, line, "basis_site"));
       }},
      {"methods",
       [](ScenarioConfig& c, const std::string& v, int line) {
         c.methods.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) {
           item = trim(item);
           if (!item.empty()) c.methods.push_back(parse_method(item, line));
         }
       }},
      {"n_traj",
       [](ScenarioConfig& c, const std::string& v, int line) {
         c.n_traj = static_cast<int>(parse_int(v, line, "n_traj"));
       }},
      {"t_final", [](ScenarioConfig& c, const std::string& v, int l) { c.t_final = parse_double(v, l, "t_final"); }},
      {"dt", [](ScenarioConfig& c, const std::string& v, int l) { c.dt = parse_double(v, l, "dt"); }},
      {"output_dt", [](ScenarioConfig& c, const std::string& v, int l) { c.output_dt = parse_double(v, l, "output_dt"); }},
      {"tau", [](ScenarioConfig& c, const std::string& v, int l) { c.tau = parse_double(v, l, "tau"); }},
      {"threads",
       [](ScenarioConfig& c, const std::string& v, int line) {
         c.threads = static_cast<int>(parse_int(v, line, "threads"));
       }},
      {"out_dir", [](ScenarioConfig& c, const std::string& v, int) { c.out_dir = v; }},
      {"dump_rho",
       [](ScenarioConfig& c, const std::string& v, int line) {
         c.dump_rho = parse_bool(v, line, "dump_rho");
       }},
      {"oracle_lambda_scale",
       [](ScenarioConfig& c, const std::string& v, int l) {
         c.oracle_lambda_scale = parse_double(v, l, "oracle_lambda_scale");
       }},
  };
  return kSetters;
}

void fail_field(const std::string& field, const std::string& why) {
  throw ValidationError("config field '" + field + "': " + why);
}

void validate(const ScenarioConfig& c) {
  if (c.scenario.empty()) fail_field("scenario", "must not be empty");
  if (c.n_sites < 8) fail_field("n_sites", "must be at least 8");
  if (!(c.x_max > c.x_min)) fail_field("x_max", "must exceed x_min");
  if (c.lambda < 0.0) fail_field("lambda", "must be nonnegative");
  if (!(c.r_c > 0.0)) fail_field("r_c", "must be positive");
  if (!(c.mass > 0.0)) fail_field("mass", "must be positive");
  if (c.state != "gaussian" && c.state != "cat" && c.state != "basis" && c.state != "uniform") {
    fail_field("state", "must be gaussian, cat, basis or uniform");
  }
  if (!(c.sigma > 0.0)) fail_field("sigma", "must be positive");
  if (c.methods.empty()) fail_field("methods", "must not be empty");
  if (c.n_traj < 1) fail_field("n_traj", "must be at least 1");
  if (!(c.t_final > 0.0)) fail_field("t_final", "must be positive");
  if (!(c.dt > 0.0)) fail_field("dt", "must be positive");
  if (!(c.output_dt > 0.0)) fail_field("output_dt", "must be positive");
  if (!(c.tau > 0.0)) fail_field("tau", "must be positive");
  if (c.threads < 1) fail_field("threads", "must be at least 1");
  if (!(c.oracle_lambda_scale > 0.0)) fail_field("oracle_lambda_scale", "must be positive");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig config;
  std::istringstream in(text);
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) raw.erase(comment);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "line " << line_number << ": expected 'key = value', got '" << line << "'";
      throw ParseError(msg.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      std::ostringstream msg;
      msg << "line " << line_number << ": unknown key '" << key << "'";
      int best_distance = 3;
      std::string best;
      for (const auto& [known, setter] : setters()) {
        const int d = edit_distance(key, known);
        if (d < best_distance) {
          best_distance = d;
          best = known;
        }
      }
      if (!best.empty()) msg << " (did you mean '" << best << "'?)";
      throw ParseError(msg.str());
    }
    it->second(config, value, line_number);
  }
  validate(config);
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<std::string> config_echo_lines(const ScenarioConfig& c) {
  std::vector<std::string> lines;
  auto add = [&](const std::string& key, const std::string& value) {
    lines.push_back(key + " = " + value);
  };
  add("scenario", c.scenario);
  add("seed", std::to_string(c.seed));
  add("n_sites", std::to_string(c.n_sites));
  add("x_min", format_double(c.x_min));
  add("x_max", format_double(c.x_max));
  add("lambda", format_double(c.lambda));
  add("r_c", format_double(c.r_c));
  add("mass", format_double(c.mass));
  add("state", c.state);
  add("x0", format_double(c.x0));
  add("p0", format_double(c.p0));
  add("sigma", format_double(c.sigma));
  add("x1", format_double(c.x1));
  add("x2", format_double(c.x2));
  add("basis_site", std::to_string(c.basis_site));
  std::string methods;
  for (const auto& m : c.methods) {
    if (!methods.empty()) methods += ", ";
    methods += method_name(m);
  }
  add("methods", methods);
  add("n_traj", std::to_string(c.n_traj));
  add("t_final", format_double(c.t_final));
  add("dt", format_double(c.dt));
  add("output_dt", format_double(c.output_dt));
  add("tau", format_double(c.tau));
  add("threads", std::to_string(c.threads));
  add("out_dir", c.out_dir);
  add("dump_rho", c.dump_rho ? "true" : "false");
  add("oracle_lambda_scale", format_double(c.oracle_lambda_scale));
  return lines;
}

std::string config_to_text(const ScenarioConfig& config) {
  std::string text;
  for (const auto& line : config_echo_lines(config)) {
    text += line;
    text += '\n';
  }
  return text;
}

}  // namespace unravel
