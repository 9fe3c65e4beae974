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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "dynshadow/stats.hpp"

using namespace dynshadow;

TEST_CASE("regularized gamma Q against closed forms") {
  // Q(1, x) = exp(-x).
  for (double x : {0.1, 0.5, 1.0, 2.5, 10.0}) {
    CHECK(regularized_gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
  }
  // Q(1/2, x) = erfc(sqrt(x)).
  for (double x : {0.2, 1.0, 4.0, 9.0}) {
    CHECK(regularized_gamma_q(0.5, x) ==
          doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-12));
  }
  // Q(2, x) = (1 + x) exp(-x).
  for (double x : {0.3, 1.0, 3.0, 20.0}) {
    CHECK(regularized_gamma_q(2.0, x) ==
          doctest::Approx((1.0 + x) * std::exp(-x)).epsilon(1e-12));
  }
  CHECK(regularized_gamma_q(3.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("chi-square p-values against closed forms") {
  // dof 2: p = exp(-s/2).
  for (double s : {0.5, 2.0, 7.0}) {
    CHECK(chi_square_pvalue(s, 2.0) == doctest::Approx(std::exp(-s / 2)).epsilon(1e-12));
  }
  // dof 1: p = erfc(sqrt(s/2)).
  for (double s : {0.1, 1.0, 6.0}) {
    CHECK(chi_square_pvalue(s, 1.0) ==
          doctest::Approx(std::erfc(std::sqrt(s / 2))).epsilon(1e-12));
  }
  CHECK(chi_square_pvalue(0.0, 5.0) == doctest::Approx(1.0));
}

TEST_CASE("two-sample chi-square flags disagreement and accepts agreement") {
  std::vector<uint64_t> a{1000, 2000, 1000};
  std::vector<uint64_t> b{1020, 1960, 1020};
  ChiSquareResult same = chi_square_two_sample(a, b);
  CHECK(same.p_value > 0.05);

  std::vector<uint64_t> c{2000, 1000, 1000};
  ChiSquareResult diff = chi_square_two_sample(a, c);
  CHECK(diff.p_value < 1e-6);
  CHECK(diff.statistic > same.statistic);

  // Empty categories on both sides are ignored.
  std::vector<uint64_t> a2{1000, 0, 2000, 1000};
  std::vector<uint64_t> b2{1020, 0, 1960, 1020};
  CHECK(chi_square_two_sample(a2, b2).p_value ==
        doctest::Approx(same.p_value).epsilon(1e-9));

  CHECK_THROWS_AS(chi_square_two_sample({1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("line fit recovers exact slopes") {
  std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y;
  for (double v : x) y.push_back(-0.5 * v + 2.0);
  LinearFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_line({1.0, 2.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("median of odd and even counts") {
  CHECK(median({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
  CHECK(median({7.5}) == doctest::Approx(7.5));
  CHECK_THROWS_AS(median({}), std::invalid_argument);
}
