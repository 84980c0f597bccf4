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

#include "meritscan/indices.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "meritscan/csv.hpp"
#include "meritscan/rng.hpp"
#include "meritscan/stats.hpp"
#include "meritscan/text.hpp"

namespace meritscan::indices {

ConcomitantSequence concomitants(std::span<const IoPair> pairs,
                                 const ConcomitantOptions& options) {
  if (pairs.size() < 2) {
    throw InsufficientDataError("concomitant ordering needs at least 2 pairs, have " +
                                std::to_string(pairs.size()));
  }
  std::vector<double> x(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) x[i] = pairs[i].x;
  if (options.jitter) {
    Rng rng(options.jitter_seed);
    for (auto& v : x) v += rng.uniform(-1e-12, 1e-12);
  }

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  ConcomitantSequence seq;
  seq.y.reserve(pairs.size());
  for (const std::size_t i : order) seq.y.push_back(pairs[i].y);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (x[order[i]] == x[order[i - 1]]) ++seq.tie_count;
  }
  return seq;
}

double s_n(const ConcomitantSequence& c) {
  if (c.y.size() < 2) {
    throw InsufficientDataError("total variation needs at least 2 concomitants");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < c.y.size(); ++i) total += std::abs(c.y[i] - c.y[i - 1]);
  return total;
}

double i_index(const ConcomitantSequence& c) {
  const double total = s_n(c);
  if (total == 0.0) {
    throw DegenerateSequenceError("all concomitants equal, index undefined");
  }
  double positive = 0.0;
  for (std::size_t i = 1; i < c.y.size(); ++i) {
    const double d = c.y[i] - c.y[i - 1];
    if (d > 0) positive += d;
  }
  return positive / total;
}

double b_index(const ConcomitantSequence& c, double p) {
  if (!(p > 0.0)) throw std::domain_error("b_index requires p > 0");
  const double total = s_n(c);
  if (std::isinf(p)) return total;
  return total / std::pow(static_cast<double>(c.y.size()), 1.0 / p);
}

std::pair<double, double> i_identity_check(const ConcomitantSequence& c) {
  const double lhs = i_index(c);
  const double rhs = 0.5 * (1.0 + (c.y.back() - c.y.front()) / s_n(c));
  return {lhs, rhs};
}

Algorithm1Result indices_from_runs(std::span<const classify::RunResult> runs,
                                   std::span<const quantify::NarrativeQuantities> per_row,
                                   Tag tag, const IndexSelection& selection,
                                   const ConcomitantOptions& options) {
  Algorithm1Result result;
  std::vector<quantify::NarrativeQuantities> subset;

  for (const auto& run : runs) {
    subset.clear();
    for (const std::size_t row : run.predicted_merit_rows) {
      subset.push_back(per_row[row]);
    }
    const auto pairs = quantify::make_io_pairs(subset, tag);
    if (pairs.pairs.size() < 2) {
      ++result.skipped_runs;
      continue;
    }
    const auto seq = concomitants(pairs.pairs, options);
    // A flat sequence has no defined I and a useless S; drop the run for
    // every index kind so the per-run point sets stay aligned.
    if (s_n(seq) == 0.0) {
      ++result.skipped_runs;
      continue;
    }
    const std::size_t n = run.predicted_merit_rows.size();

    if (selection.want_i) {
      result.points.push_back({run.run, IndexKind::I, 0.0, n, i_index(seq)});
    }
    if (selection.want_s) {
      result.points.push_back({run.run, IndexKind::S, 0.0, n, s_n(seq)});
    }
    for (const double p : selection.p_values) {
      result.points.push_back({run.run, IndexKind::B, p, n, b_index(seq, p)});
    }
  }
  return result;
}

Algorithm1Result run_algorithm1(classify::ModelKind kind, Tag tag,
                                const classify::Dataset& data,
                                std::span<const quantify::NarrativeQuantities> per_row,
                                const lexicon::SentimentLexicon& lex,
                                const classify::SplitSpec& spec,
                                const IndexSelection& selection,
                                const classify::TrainConfig& config,
                                const ConcomitantOptions& options) {
  const auto runs = classify::run_repeated(kind, tag, data, lex, spec, config);
  return indices_from_runs(runs, per_row, tag, selection, options);
}

GrowthEstimate estimate_growth(std::span<const IndexPoint> s_points) {
  std::set<std::size_t> distinct;
  std::vector<double> log_n, log_s;
  for (const auto& point : s_points) {
    if (point.kind != IndexKind::S) continue;
    if (!(point.value > 0.0)) {
      throw InsufficientDataError("growth fit requires positive total-variation values");
    }
    distinct.insert(point.n);
    log_n.push_back(std::log(static_cast<double>(point.n)));
    log_s.push_back(std::log(point.value));
  }
  if (distinct.size() < 10) {
    throw InsufficientDataError("growth fit needs at least 10 distinct set sizes, have " +
                                std::to_string(distinct.size()));
  }

  const auto ols = stats::simple_ols(log_n, log_s);
  GrowthEstimate estimate;
  estimate.slope = ols.slope;
  estimate.slope_ci95 = {ols.slope_lo, ols.slope_hi};
  estimate.p_star =
      ols.slope > 0.0 ? 1.0 / ols.slope : std::numeric_limits<double>::infinity();
  estimate.n_points = log_n.size();
  return estimate;
}

const char* verdict_name(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::In: return "in";
    case OrderVerdict::Out: return "out";
    case OrderVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

OrderVerdict classify_order(double slope, double p, double tau) {
  if (!(p > 0.0)) throw std::domain_error("classify_order requires p > 0");
  const double boundary = 1.0 / p;
  if (slope > boundary + tau) return OrderVerdict::Out;
  if (slope < boundary - tau) return OrderVerdict::In;
  return OrderVerdict::Inconclusive;
}

std::vector<IoPair> generate_synthetic(const SyntheticSystemSpec& spec) {
  const quantify::TransferFunction tf{spec.alpha, spec.c2};
  const double exponent = tf.exponent();
  Rng rng(spec.seed);

  const auto draw_delta = [&]() -> double {
    switch (spec.delta) {
      case SyntheticSystemSpec::Delta::Gaussian: return rng.gaussian(0.0, spec.delta_sigma);
      case SyntheticSystemSpec::Delta::Uniform: return rng.uniform(spec.delta_lo, spec.delta_hi);
      case SyntheticSystemSpec::Delta::None: return 0.0;
    }
    return 0.0;
  };

  std::vector<IoPair> pairs;
  pairs.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double x = rng.uniform(spec.input_lo, spec.input_hi);
    double z = x + draw_delta();
    if (spec.alpha > 1.0) {
      // Negative exponent: the response diverges at 0, so stay positive.
      for (int attempt = 0; z <= 0.0; ++attempt) {
        if (attempt >= 1000) {
          throw std::domain_error("cannot draw a positive input for alpha > 1");
        }
        z = x + draw_delta();
      }
    } else if (z < 0.0) {
      z = 0.0;
    }
    IoPair pair;
    pair.id = "synthetic" + std::to_string(i);
    pair.x = x;
    pair.y = spec.c2 * std::pow(z, exponent);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

void write_indices_csv(const std::filesystem::path& file, std::span<const IndexRow> rows) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write: " + file.string());
  out << "run,model,featurization,index_kind,p,n,value\n";
  for (const auto& row : rows) {
    out << row.point.run << ',' << row.model << ',' << row.featurization << ','
        << static_cast<char>(row.point.kind) << ',';
    if (row.point.kind == IndexKind::B) out << format_double(row.point.p);
    out << ',' << row.point.n << ',' << format_double(row.point.value) << '\n';
  }
}

std::vector<IndexRow> read_indices_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open index file: " + file.string());
  CsvReader reader(in);
  const auto header = reader.next_row();
  if (!header || header->size() != 7 || (*header)[0] != "run") {
    throw std::runtime_error("not an index file: " + file.string());
  }
  std::vector<IndexRow> rows;
  while (auto row = reader.next_row()) {
    if (row->size() != 7) throw CsvError("index row needs 7 fields", reader.row_number());
    IndexRow r;
    r.point.run = static_cast<int>(parse_long((*row)[0]).value_or(-1));
    r.model = (*row)[1];
    r.featurization = (*row)[2];
    if ((*row)[3].size() != 1) throw CsvError("bad index kind", reader.row_number());
    r.point.kind = static_cast<IndexKind>((*row)[3][0]);
    r.point.p = parse_double((*row)[4]).value_or(0.0);
    r.point.n = static_cast<std::size_t>(parse_long((*row)[5]).value_or(0));
    r.point.value = parse_double((*row)[6]).value_or(0.0);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string format_verdicts(const GrowthEstimate& estimate, std::span<const double> p_values,
                            double tau) {
  std::string out;
  for (const double p : p_values) {
    if (!out.empty()) out.push_back(';');
    out += format_double(p);
    out.push_back(':');
    out += verdict_name(classify_order(estimate.slope, p, tau));
  }
  return out;
}

void write_growth_csv(const std::filesystem::path& file, std::span<const GrowthRow> rows) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write: " + file.string());
  out << "model,featurization,slope,slope_lo,slope_hi,p_star,verdicts_per_p\n";
  for (const auto& row : rows) {
    out << row.model << ',' << row.featurization << ',' << format_double(row.estimate.slope)
        << ',' << format_double(row.estimate.slope_ci95.first) << ','
        << format_double(row.estimate.slope_ci95.second) << ','
        << format_double(row.estimate.p_star) << ',' << csv_field(row.verdicts) << '\n';
  }
}

}  // namespace meritscan::indices
