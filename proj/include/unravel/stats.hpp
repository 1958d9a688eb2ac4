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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace unravel {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Sample mean and unbiased variance.
std::pair<double, double> mean_variance(std::span<const double> values);

/// Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0.
double regularized_gamma_q(double a, double x);

/// Upper-tail p-value of a chi-square statistic with `dof` degrees of freedom.
double chi_square_pvalue(double chi2, int dof);

/// Two-sided Kolmogorov-Smirnov p-value for statistic d at sample size n
/// (asymptotic Kolmogorov distribution with the small-sample correction).
double ks_pvalue(double d, std::size_t n);

}  // namespace unravel
