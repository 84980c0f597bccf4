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

#include "meritscan/stats.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>

namespace meritscan::stats {

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double t_quantile(double p, double df) {
  boost::math::students_t dist(df);
  return boost::math::quantile(dist, p);
}

double normal_quantile(double p) {
  boost::math::normal dist;
  return boost::math::quantile(dist, p);
}

std::vector<double> qq_positions(std::size_t n) {
  std::vector<double> out(n);
  const double a = n <= 10 ? 3.0 / 8.0 : 0.5;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (static_cast<double>(i + 1) - a) / (static_cast<double>(n) + 1.0 - 2.0 * a);
  }
  return out;
}

OlsFit simple_ols(std::span<const double> x, std::span<const double> y, double confidence) {
  if (x.size() != y.size()) throw FitError("x and y lengths differ");
  const std::size_t n = x.size();
  if (n < 3) throw FitError("need at least 3 points to fit a line");

  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw FitError("predictor is constant");

  OlsFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  fit.fitted.resize(n);
  fit.residuals.resize(n);
  fit.leverage.resize(n);
  fit.standardized.resize(n);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.fitted[i] = fit.intercept + fit.slope * x[i];
    fit.residuals[i] = y[i] - fit.fitted[i];
    rss += fit.residuals[i] * fit.residuals[i];
    fit.leverage[i] = 1.0 / static_cast<double>(n) + (x[i] - mx) * (x[i] - mx) / sxx;
  }

  const double df = static_cast<double>(n - 2);
  fit.sigma2 = rss / df;
  fit.slope_se = std::sqrt(fit.sigma2 / sxx);
  const double tcrit = t_quantile(1.0 - (1.0 - confidence) / 2.0, df);
  fit.slope_lo = fit.slope - tcrit * fit.slope_se;
  fit.slope_hi = fit.slope + tcrit * fit.slope_se;

  for (std::size_t i = 0; i < n; ++i) {
    const double denom = std::sqrt(fit.sigma2 * (1.0 - fit.leverage[i]));
    fit.standardized[i] = denom > 0.0 ? fit.residuals[i] / denom : 0.0;
  }
  return fit;
}

}  // namespace meritscan::stats
