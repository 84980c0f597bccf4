// Copyright 2026 The meritscan Authors
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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "meritscan/rng.hpp"
#include "meritscan/stats.hpp"

using namespace meritscan;
using namespace meritscan::stats;

TEST_CASE("least squares recovers a hand-checked fit") {
  // y = 1 + 2x plus residuals (-1, 2, -2, 1, 0) chosen to sum to zero and
  // be x-orthogonal is overkill; instead use small integers and compare
  // with the closed form computed by hand:
  //   x = 1..5, y = {3, 4, 8, 9, 11}: Sxx = 10, Sxy = 21
  //   slope = 2.1, intercept = 7 - 2.1 * 3 = 0.7
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {3, 4, 8, 9, 11};
  const auto fit = simple_ols(x, y);

  CHECK(fit.n == 5);
  CHECK(fit.slope == doctest::Approx(2.1).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.7).epsilon(1e-12));

  // RSS = sum of squared residuals; residuals are y - (0.7 + 2.1 x):
  //   {0.2, -0.9, 1.0, -0.1, -0.2}, RSS = 1.9, sigma2 = 1.9 / 3
  CHECK(fit.sigma2 == doctest::Approx(1.9 / 3.0).epsilon(1e-12));
  CHECK(fit.slope_se == doctest::Approx(std::sqrt(1.9 / 3.0 / 10.0)).epsilon(1e-12));

  // 95% t bounds with 3 degrees of freedom.
  const double t = t_quantile(0.975, 3.0);
  CHECK(fit.slope_lo == doctest::Approx(2.1 - t * fit.slope_se).epsilon(1e-12));
  CHECK(fit.slope_hi == doctest::Approx(2.1 + t * fit.slope_se).epsilon(1e-12));

  REQUIRE(fit.residuals.size() == 5);
  CHECK(fit.residuals[0] == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(fit.residuals[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("an exact line fits with zero residual variance") {
  const std::vector<double> x = {0, 1, 2, 3};
  const std::vector<double> y = {5, 7, 9, 11};
  const auto fit = simple_ols(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(fit.sigma2 == doctest::Approx(0.0));
  for (double r : fit.residuals) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("degenerate inputs are refused") {
  const std::vector<double> two_x = {1, 2};
  const std::vector<double> two_y = {1, 2};
  CHECK_THROWS_AS(simple_ols(two_x, two_y), FitError);

  const std::vector<double> const_x = {3, 3, 3, 3};
  const std::vector<double> y = {1, 2, 3, 4};
  CHECK_THROWS_AS(simple_ols(const_x, y), FitError);

  const std::vector<double> x3 = {1, 2, 3};
  const std::vector<double> y_short = {1, 2};
  CHECK_THROWS_AS(simple_ols(x3, y_short), FitError);
}

TEST_CASE("residuals sum to zero and leverages sum to two") {
  Rng rng(11);
  std::vector<double> x(40), y(40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform() * 10.0;
    y[i] = 3.0 - 0.5 * x[i] + rng.gaussian();
  }
  const auto fit = simple_ols(x, y);

  const double rsum = std::accumulate(fit.residuals.begin(), fit.residuals.end(), 0.0);
  CHECK(std::abs(rsum) < 1e-9);

  // Trace of the hat matrix equals the number of coefficients.
  const double hsum = std::accumulate(fit.leverage.begin(), fit.leverage.end(), 0.0);
  CHECK(hsum == doctest::Approx(2.0).epsilon(1e-9));
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(fit.leverage[i] > 0.0);
    CHECK(fit.leverage[i] < 1.0);
    CHECK(fit.fitted[i] + fit.residuals[i] == doctest::Approx(y[i]).epsilon(1e-12));
    const double expect_std =
        fit.residuals[i] / std::sqrt(fit.sigma2 * (1.0 - fit.leverage[i]));
    CHECK(fit.standardized[i] == doctest::Approx(expect_std).epsilon(1e-12));
  }
}

TEST_CASE("t quantiles match published table values") {
  // Two-sided 95% critical values.
  CHECK(t_quantile(0.975, 10.0) == doctest::Approx(2.2281388520).epsilon(1e-8));
  CHECK(t_quantile(0.975, 3.0) == doctest::Approx(3.1824463053).epsilon(1e-8));
  CHECK(t_quantile(0.975, 2847.0) == doctest::Approx(1.9608).epsilon(1e-4));
  CHECK(t_quantile(0.5, 7.0) == doctest::Approx(0.0));
  // Symmetry.
  CHECK(t_quantile(0.025, 10.0) == doctest::Approx(-t_quantile(0.975, 10.0)).epsilon(1e-12));
}

TEST_CASE("normal quantiles match published table values") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845).epsilon(1e-8));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
  CHECK(normal_quantile(0.841344746) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845).epsilon(1e-8));
}

TEST_CASE("qq plotting positions switch rule at ten points") {
  const auto small = qq_positions(4);
  REQUIRE(small.size() == 4);
  CHECK(small[0] == doctest::Approx((1.0 - 0.375) / 4.25).epsilon(1e-12));
  CHECK(small[3] == doctest::Approx((4.0 - 0.375) / 4.25).epsilon(1e-12));

  const auto ten = qq_positions(10);
  CHECK(ten[0] == doctest::Approx((1.0 - 0.375) / 10.25).epsilon(1e-12));

  const auto large = qq_positions(11);
  REQUIRE(large.size() == 11);
  CHECK(large[0] == doctest::Approx(0.5 / 11.0).epsilon(1e-12));
  CHECK(large[10] == doctest::Approx(10.5 / 11.0).epsilon(1e-12));

  // Positions are strictly inside (0, 1) and increasing.
  for (const auto& positions : {small, ten, large}) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      CHECK(positions[i] > 0.0);
      CHECK(positions[i] < 1.0);
      if (i) CHECK(positions[i] > positions[i - 1]);
    }
  }
}

TEST_CASE("mean of a span") {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == doctest::Approx(2.5).epsilon(1e-15));
}
