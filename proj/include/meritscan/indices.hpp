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

#ifndef MERITSCAN_INDICES_HPP
#define MERITSCAN_INDICES_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meritscan/classify.hpp"
#include "meritscan/quantify.hpp"

namespace meritscan::indices {

using featurize::Tag;
using quantify::InsufficientDataError;
using quantify::IoPair;

struct DegenerateSequenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Outputs ordered by their inputs: y_(1) pairs with the smallest x, and so
// on. Equal inputs keep their original relative order and are counted.
struct ConcomitantSequence {
  std::vector<double> y;
  std::size_t tie_count = 0;
};

struct ConcomitantOptions {
  // Optional deterministic jitter (±1e-12 scale) applied to the inputs
  // before ordering, for inputs with heavy ties.
  bool jitter = false;
  std::uint64_t jitter_seed = 0;
};

ConcomitantSequence concomitants(std::span<const IoPair> pairs,
                                 const ConcomitantOptions& options = {});

// Fraction of the total variation contributed by upward moves:
//   I = sum (y_i - y_{i-1})_+ / sum |y_i - y_{i-1}|, in [0,1].
// A sequence with zero total variation has no defined value.
double i_index(const ConcomitantSequence& c);

// Total variation sum |y_i - y_{i-1}|.
double s_n(const ConcomitantSequence& c);

// S_n / n^(1/p) for p in (0, +inf]; p = +inf leaves S_n unscaled.
double b_index(const ConcomitantSequence& c, double p);

// Algebraic identity I = (1 + (y_n - y_1)/S_n) / 2. Returns both sides;
// they are equal up to rounding and tested as such.
std::pair<double, double> i_identity_check(const ConcomitantSequence& c);

enum class IndexKind : char { I = 'I', S = 'S', B = 'B' };

struct IndexPoint {
  int run = 0;
  IndexKind kind = IndexKind::I;
  double p = 0.0;  // meaningful for kind B only
  std::size_t n = 0;
  double value = 0.0;
};

struct IndexSelection {
  bool want_i = true;
  bool want_s = true;
  std::vector<double> p_values;  // one B point per run per p
};

struct Algorithm1Result {
  std::vector<IndexPoint> points;
  std::size_t skipped_runs = 0;  // runs with fewer than 2 usable pairs
};

// Joins per-run predicted-meritorious rows with the per-row quantities:
// for each run, the pairs of its predicted set are ordered and reduced to
// one point per requested index. n is the predicted set size.
Algorithm1Result indices_from_runs(std::span<const classify::RunResult> runs,
                                   std::span<const quantify::NarrativeQuantities> per_row,
                                   Tag tag, const IndexSelection& selection,
                                   const ConcomitantOptions& options = {});

// Split, train, predict, reduce: the full per-run protocol. quantities
// must be row-aligned with the dataset.
Algorithm1Result run_algorithm1(classify::ModelKind kind, Tag tag,
                                const classify::Dataset& data,
                                std::span<const quantify::NarrativeQuantities> per_row,
                                const lexicon::SentimentLexicon& lex,
                                const classify::SplitSpec& spec,
                                const IndexSelection& selection,
                                const classify::TrainConfig& config = {},
                                const ConcomitantOptions& options = {});

// Power-law growth of the total variation: OLS of ln S on ln n over the
// per-run S points. p_star = 1/slope (+inf when slope <= 0) estimates the
// largest p with B_{n,p} stochastically bounded.
struct GrowthEstimate {
  double slope = 0.0;
  std::pair<double, double> slope_ci95{0.0, 0.0};
  double p_star = 0.0;
  std::size_t n_points = 0;
};

GrowthEstimate estimate_growth(std::span<const IndexPoint> s_points);

enum class OrderVerdict { In, Out, Inconclusive };

const char* verdict_name(OrderVerdict v);

// Slope against the 1/p line with a decision band of half-width tau.
OrderVerdict classify_order(double slope, double p, double tau = 0.05);

// Synthetic system for validating the indices: inputs uniform on a
// subinterval of [0,1], outputs h0(x + delta) with configurable
// background noise delta.
struct SyntheticSystemSpec {
  std::size_t n = 0;
  double alpha = 0.0;
  double c2 = 1.0;
  enum class Delta { None, Gaussian, Uniform } delta = Delta::None;
  double delta_sigma = 0.0;  // Gaussian
  double delta_lo = 0.0;     // Uniform
  double delta_hi = 0.0;
  double input_lo = 0.0;
  double input_hi = 1.0;
  std::uint64_t seed = 0;
};

// For alpha < 1 a perturbed input x + delta <= 0 evaluates to y = 0 and
// larger ones feed the power function as-is; for alpha > 1 (negative
// exponent) non-positive perturbed inputs are resampled instead, since
// the response diverges there.
std::vector<IoPair> generate_synthetic(const SyntheticSystemSpec& spec);

// Index artifact: run,model,featurization,index_kind,p,n,value (p blank
// except for B rows).
struct IndexRow {
  std::string model;
  std::string featurization;
  IndexPoint point;
};

void write_indices_csv(const std::filesystem::path& file, std::span<const IndexRow> rows);
std::vector<IndexRow> read_indices_csv(const std::filesystem::path& file);

// Growth report: model,featurization,slope,slope_lo,slope_hi,p_star,verdicts_per_p.
struct GrowthRow {
  std::string model;
  std::string featurization;
  GrowthEstimate estimate;
  std::string verdicts;  // "p:verdict" pairs joined by ';'
};

void write_growth_csv(const std::filesystem::path& file, std::span<const GrowthRow> rows);

std::string format_verdicts(const GrowthEstimate& estimate, std::span<const double> p_values,
                            double tau = 0.05);

}  // namespace meritscan::indices

#endif  // MERITSCAN_INDICES_HPP
