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

#include "meritscan/quantify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "meritscan/csv.hpp"
#include "meritscan/stats.hpp"
#include "meritscan/text.hpp"

namespace meritscan::quantify {

namespace {

bool counts_as_word(const std::string& token, const QuantifyOptions& options) {
  return options.count_marks_as_words || !corpus::is_semantic_mark(token);
}

}  // namespace

double sentiment_score(const corpus::CleanedNarrative& doc, const lexicon::SentimentLexicon& lex,
                       const lexicon::WordSet& negative_words, const QuantifyOptions& options) {
  double s = 0.0;
  for (const auto& token : doc.tokens) {
    if (!counts_as_word(token, options)) continue;
    if (negative_words.count(token)) s += std::abs(lex.intensity(token));
  }
  return s;
}

NarrativeQuantities compute_quantities(const corpus::CleanedNarrative& doc,
                                       const lexicon::SentimentLexicon& lex,
                                       const lexicon::WordSet& negative_words,
                                       double adjusted_amount, const QuantifyOptions& options) {
  NarrativeQuantities q;
  q.id = doc.id;
  q.l = adjusted_amount;
  q.s = sentiment_score(doc, lex, negative_words, options);
  for (const auto& token : doc.tokens) {
    if (!counts_as_word(token, options)) continue;
    ++q.m_ti;
    if (negative_words.count(token)) ++q.m_tiv;
  }
  return q;
}

CobbDouglasFit fit_cobb_douglas(std::span<const NarrativeQuantities> quantities, Tag variant) {
  CobbDouglasFit fit;
  std::vector<double> x, y;
  for (const auto& q : quantities) {
    const double m = static_cast<double>(variant == Tag::TermImportance ? q.m_ti : q.m_tiv);
    if (q.s <= 0.0 || m <= 0.0 || q.l <= 0.0) {
      ++fit.n_excluded;
      continue;
    }
    x.push_back(std::log(q.s / q.l));
    y.push_back(std::log(m / q.l));
  }
  if (x.size() < 3) {
    throw InsufficientDataError("regression needs at least 3 usable narratives, have " +
                                std::to_string(x.size()));
  }

  const auto ols = stats::simple_ols(x, y);
  fit.alpha_hat = ols.slope;
  fit.alpha_ci95 = {ols.slope_lo, ols.slope_hi};
  fit.intercept = ols.intercept;
  fit.beta_hat = std::exp(ols.intercept);
  fit.alpha_above_one = ols.slope > 1.0;
  fit.n_used = x.size();
  fit.log_x = std::move(x);
  fit.log_y = std::move(y);
  fit.fitted = ols.fitted;
  fit.residuals = ols.residuals;
  fit.leverage = ols.leverage;
  fit.standardized_residuals = ols.standardized;
  return fit;
}

IoPairResult make_io_pairs(std::span<const NarrativeQuantities> quantities, Tag variant) {
  IoPairResult result;
  for (const auto& q : quantities) {
    const double m = static_cast<double>(variant == Tag::TermImportance ? q.m_ti : q.m_tiv);
    if (m <= 0.0 || q.l <= 0.0) {
      ++result.n_excluded;
      continue;
    }
    IoPair p;
    p.id = q.id;
    p.tag = variant;
    p.x = std::min(1.0, q.s / (4.0 * m));
    p.y = m / q.l;
    result.pairs.push_back(std::move(p));
  }
  return result;
}

TransferFunction TransferFunction::from_parameters(double alpha, double beta) {
  if (alpha == 1.0) throw std::domain_error("transfer function undefined at alpha = 1");
  if (beta <= 0.0) throw std::domain_error("beta must be positive");
  const double c1 = alpha / (1.0 - alpha) * std::log(4.0) + std::log(beta) / (1.0 - alpha);
  TransferFunction tf;
  tf.alpha = alpha;
  tf.c2 = std::exp(c1);
  return tf;
}

double transfer_eval(const TransferFunction& tf, double x) {
  if (tf.alpha == 1.0) throw std::domain_error("transfer function undefined at alpha = 1");
  if (x < 0.0 || x > 1.0) throw std::domain_error("transfer input outside [0,1]");
  const double e = tf.exponent();
  if (x == 0.0 && e < 0.0) return std::numeric_limits<double>::infinity();
  return tf.c2 * std::pow(x, e);
}

LipschitzCheck lipschitz_bound_check(const TransferFunction& tf, std::size_t grid_size) {
  if (tf.alpha == 1.0) throw std::domain_error("transfer function undefined at alpha = 1");
  if (grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");

  const double e = tf.exponent();
  const double c3 = tf.c2 * e;
  LipschitzCheck check;
  for (std::size_t k = 1; k <= grid_size; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(grid_size);
    check.max_abs_derivative =
        std::max(check.max_abs_derivative, std::abs(c3 * std::pow(x, e - 1.0)));
  }
  check.is_bounded = tf.alpha >= 0.5 && tf.alpha < 1.0;
  return check;
}

void write_quantities_csv(const std::filesystem::path& file,
                          std::span<const NarrativeQuantities> quantities) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write: " + file.string());
  out << "id,s,m_ti,m_tiv,l,x_ti,y_ti,x_tiv,y_tiv\n";
  for (const auto& q : quantities) {
    out << csv_field(q.id) << ',' << format_double(q.s) << ',' << q.m_ti << ',' << q.m_tiv
        << ',' << format_double(q.l);
    if (q.m_ti > 0) {
      out << ',' << format_double(std::min(1.0, q.s / (4.0 * static_cast<double>(q.m_ti))))
          << ',' << format_double(static_cast<double>(q.m_ti) / q.l);
    } else {
      out << ",,";
    }
    if (q.m_tiv > 0) {
      out << ',' << format_double(std::min(1.0, q.s / (4.0 * static_cast<double>(q.m_tiv))))
          << ',' << format_double(static_cast<double>(q.m_tiv) / q.l);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

std::vector<NarrativeQuantities> read_quantities_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open quantities file: " + file.string());
  CsvReader reader(in);
  const auto header = reader.next_row();
  if (!header || header->size() != 9 || (*header)[0] != "id") {
    throw std::runtime_error("not a quantities file: " + file.string());
  }
  std::vector<NarrativeQuantities> out;
  while (auto row = reader.next_row()) {
    if (row->size() != 9) throw CsvError("quantities row needs 9 fields", reader.row_number());
    NarrativeQuantities q;
    q.id = (*row)[0];
    q.s = parse_double((*row)[1]).value_or(0.0);
    q.m_ti = static_cast<std::size_t>(parse_long((*row)[2]).value_or(0));
    q.m_tiv = static_cast<std::size_t>(parse_long((*row)[3]).value_or(0));
    q.l = parse_double((*row)[4]).value_or(0.0);
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace meritscan::quantify
