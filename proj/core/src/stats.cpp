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

#include "dynshadow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dynshadow {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-15;

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw std::invalid_argument("regularized_gamma_q requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double chi_square_pvalue(double statistic, double dof) {
  if (!(dof > 0.0)) {
    throw std::invalid_argument("chi-square needs positive degrees of freedom");
  }
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_two_sample(const std::vector<uint64_t>& a,
                                      const std::vector<uint64_t>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("two-sample chi-square needs equal category counts");
  }
  double n1 = 0, n2 = 0;
  for (uint64_t v : a) n1 += static_cast<double>(v);
  for (uint64_t v : b) n2 += static_cast<double>(v);
  if (n1 == 0 || n2 == 0) {
    throw std::invalid_argument("two-sample chi-square needs nonempty samples");
  }
  ChiSquareResult r;
  size_t live = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double pooled = static_cast<double>(a[i]) + static_cast<double>(b[i]);
    if (pooled == 0) continue;
    ++live;
    double e1 = n1 * pooled / (n1 + n2);
    double e2 = n2 * pooled / (n1 + n2);
    double d1 = static_cast<double>(a[i]) - e1;
    double d2 = static_cast<double>(b[i]) - e2;
    r.statistic += d1 * d1 / e1 + d2 * d2 / e2;
  }
  if (live < 2) {
    r.dof = 0;
    r.p_value = 1.0;
    return r;
  }
  r.dof = static_cast<double>(live - 1);
  r.p_value = chi_square_pvalue(r.statistic, r.dof);
  return r;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line needs at least two matched points");
  }
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("fit_line: x values are degenerate");
  }
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double median(std::vector<double> v) {
  if (v.empty()) {
    throw std::invalid_argument("median of empty set");
  }
  size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return (v[mid - 1] + hi) / 2.0;
}

}  // namespace dynshadow
