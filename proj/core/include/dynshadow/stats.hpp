// Copyright 2026 The dynshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNSHADOW_STATS_HPP
#define DYNSHADOW_STATS_HPP

#include <cstdint>
#include <vector>

namespace dynshadow {

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// a > 0, x >= 0. Series expansion below the a+1 crossover, Lentz continued
/// fraction above it.
double regularized_gamma_q(double a, double x);

/// P(X >= statistic) for a chi-square variable with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, double dof);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

/// Two-sample chi-square homogeneity test on category counts. Categories
/// empty in both samples are ignored.
ChiSquareResult chi_square_two_sample(const std::vector<uint64_t>& a,
                                      const std::vector<uint64_t>& b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares fit of y against x. Requires >= 2 points.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Median of a copy of `v` (average of the middle pair for even sizes).
double median(std::vector<double> v);

}  // namespace dynshadow

#endif  // DYNSHADOW_STATS_HPP
