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

#ifndef MERITSCAN_QUANTIFY_HPP
#define MERITSCAN_QUANTIFY_HPP

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meritscan/corpus.hpp"
#include "meritscan/featurize.hpp"
#include "meritscan/lexicon.hpp"

namespace meritscan::quantify {

using featurize::Tag;

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-narrative scalar summary: sentiment mass s, the two word counts m,
// and the price-adjusted dollar amount l.
struct NarrativeQuantities {
  std::string id;
  double s = 0.0;
  std::size_t m_ti = 0;
  std::size_t m_tiv = 0;
  double l = 0.0;
};

struct QuantifyOptions {
  // When set, "!" and "?" tokens count as words for both m and s. Off by
  // default: word counts mean words.
  bool count_marks_as_words = false;
};

// Sum of |intensity| over the narrative's word tokens that are negative
// under the lexicon, with multiplicity.
double sentiment_score(const corpus::CleanedNarrative& doc, const lexicon::SentimentLexicon& lex,
                       const lexicon::WordSet& negative_words,
                       const QuantifyOptions& options = {});

NarrativeQuantities compute_quantities(const corpus::CleanedNarrative& doc,
                                       const lexicon::SentimentLexicon& lex,
                                       const lexicon::WordSet& negative_words,
                                       double adjusted_amount,
                                       const QuantifyOptions& options = {});

// Least-squares fit of log(m/l) on log(s/l). The slope estimates the
// sentiment elasticity alpha; exp(intercept) recovers the scale beta.
struct CobbDouglasFit {
  double alpha_hat = 0.0;
  std::pair<double, double> alpha_ci95{0.0, 0.0};
  double beta_hat = 0.0;
  double intercept = 0.0;
  bool alpha_above_one = false;
  std::size_t n_used = 0;
  std::size_t n_excluded = 0;  // rows with s = 0 or m = 0 (log undefined)
  std::vector<double> log_x;   // regressor values actually used
  std::vector<double> log_y;
  std::vector<double> fitted;
  std::vector<double> residuals;
  std::vector<double> leverage;
  std::vector<double> standardized_residuals;
};

// Throws InsufficientDataError when fewer than 3 usable rows remain.
CobbDouglasFit fit_cobb_douglas(std::span<const NarrativeQuantities> quantities, Tag variant);

// Normalized input x = s/(4m) in [0,1] and output y = m/l.
struct IoPair {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  Tag tag = Tag::TermImportance;
};

struct IoPairResult {
  std::vector<IoPair> pairs;
  std::size_t n_excluded = 0;  // rows with m = 0 for the chosen variant
};

IoPairResult make_io_pairs(std::span<const NarrativeQuantities> quantities, Tag variant);

// h0(x) = c2 * x^(alpha/(1-alpha)) on [0,1], the noise-free response of
// the fitted production relation to the normalized input.
struct TransferFunction {
  double alpha = 0.0;
  double c2 = 0.0;

  static TransferFunction from_parameters(double alpha, double beta);
  double exponent() const { return alpha / (1.0 - alpha); }
};

// For alpha > 1 the exponent is negative and h0(0) diverges; +infinity is
// returned rather than an error, since that regime is analyzed, not
// rejected. alpha = 1 has no defined exponent and throws.
double transfer_eval(const TransferFunction& tf, double x);

struct LipschitzCheck {
  double max_abs_derivative = 0.0;
  bool is_bounded = false;
};

// Evaluates h0'(x) = c2 * e * x^(e-1), e = alpha/(1-alpha), on the grid
// x = k/grid_size, k = 1..grid_size. The derivative stays bounded on
// (0,1] exactly when the exponent e - 1 is non-negative, i.e. alpha in
// [0.5, 1): at alpha = 0.5 the derivative is constant.
LipschitzCheck lipschitz_bound_check(const TransferFunction& tf, std::size_t grid_size);

// Quantities artifact: id,s,m_ti,m_tiv,l,x_ti,y_ti,x_tiv,y_tiv. The pair
// columns are blank when the variant's m is 0 (no defined input).
void write_quantities_csv(const std::filesystem::path& file,
                          std::span<const NarrativeQuantities> quantities);
std::vector<NarrativeQuantities> read_quantities_csv(const std::filesystem::path& file);

}  // namespace meritscan::quantify

#endif  // MERITSCAN_QUANTIFY_HPP
