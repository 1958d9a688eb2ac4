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

#include "unravel/trajectory.hpp"

#include <cmath>

namespace unravel {

std::vector<double> output_lattice(double t_final, double output_dt) {
  const int n_outputs = static_cast<int>(std::floor(t_final / output_dt + 1e-9));
  std::vector<double> times(n_outputs + 1);
  for (int k = 0; k <= n_outputs; ++k) times[k] = k * output_dt;
  return times;
}

}  // namespace unravel
