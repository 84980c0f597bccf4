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

#ifndef MERITSCAN_STATS_HPP
#define MERITSCAN_STATS_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace meritscan::stats {

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple linear regression y = intercept + slope * x fit by least squares,
// with a t confidence interval for the slope and the per-point quantities
// needed for standard residual diagnostics.
//
// With n observations and k = 2 estimated coefficients:
//   sigma2   = RSS / (n - k)
//   se_slope = sqrt(sigma2 / Sxx)
//   CI       = slope -+ t_{1-level/2, n-k} * se_slope
//   leverage h_i = 1/n + (x_i - mean_x)^2 / Sxx
//   standardized r_i = e_i / sqrt(sigma2 * (1 - h_i))
struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double slope_lo = 0.0;  // confidence bounds for the slope
  double slope_hi = 0.0;
  double sigma2 = 0.0;
  std::size_t n = 0;
  std::vector<double> fitted;
  std::vector<double> residuals;
  std::vector<double> leverage;
  std::vector<double> standardized;
};

// Throws FitError when fewer than three points are given or when the
// predictor is constant.
OlsFit simple_ols(std::span<const double> x, std::span<const double> y,
                  double confidence = 0.95);

// Student t quantile, P(T <= t) = p with df degrees of freedom.
double t_quantile(double p, double df);

// Standard normal quantile.
double normal_quantile(double p);

// Plotting positions for a normal quantile-quantile plot of n points:
// (i - 3/8) / (n + 1/4) for n <= 10, else (i - 1/2) / n, i = 1..n.
std::vector<double> qq_positions(std::size_t n);

double mean(std::span<const double> v);

}  // namespace meritscan::stats

#endif  // MERITSCAN_STATS_HPP
