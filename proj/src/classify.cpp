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

#include "meritscan/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "meritscan/csv.hpp"
#include "meritscan/rng.hpp"
#include "meritscan/text.hpp"
#include "model_internal.hpp"

namespace meritscan::classify {

namespace {

// Distinct seed streams for the shuffle and the model under one master
// seed, so changing the model never perturbs the splits.
constexpr std::uint64_t kSplitStream = 0x736c69747331ULL;
constexpr std::uint64_t kTrainStream = 0x747261696e31ULL;

}  // namespace

const char* kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression: return "lr";
    case ModelKind::SupportVector: return "svm";
    case ModelKind::GradientBoosting: return "gb";
    case ModelKind::MultilayerPerceptron: return "mlp";
    case ModelKind::RandomForest: return "rf";
  }
  return "?";
}

double Tree::predict(const featurize::SparseVec& x) const {
  std::int32_t node = 0;
  while (!nodes.empty() && nodes[node].feature >= 0) {
    const auto& n = nodes[node];
    const auto col = static_cast<std::uint32_t>(n.feature);
    const auto it = std::lower_bound(
        x.begin(), x.end(), col,
        [](const auto& entry, std::uint32_t c) { return entry.first < c; });
    const double value = (it != x.end() && it->first == col) ? it->second : 0.0;
    node = value <= n.threshold ? n.left : n.right;
  }
  return nodes.empty() ? 0.0 : nodes[node].value;
}

Split split(std::size_t n_rows, const SplitSpec& spec, int run_index) {
  std::vector<std::size_t> order(n_rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(spec.master_seed ^ kSplitStream, static_cast<std::uint64_t>(run_index)));
  rng.shuffle(order);

  const auto n_test = static_cast<std::size_t>(
      std::lround(spec.test_fraction * static_cast<double>(n_rows)));
  Split s;
  s.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  s.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  std::sort(s.test.begin(), s.test.end());
  std::sort(s.train.begin(), s.train.end());
  return s;
}

double TrainedModel::score(const featurize::SparseVec& x) const {
  switch (kind_) {
    case ModelKind::LogisticRegression:
      return detail::sigmoid(detail::dot(linear_, x));
    case ModelKind::SupportVector:
      return detail::dot(linear_, x);
    case ModelKind::GradientBoosting:
      return detail::boosted_score(boosted_, x);
    case ModelKind::MultilayerPerceptron:
      return detail::mlp_forward(mlp_, x);
    case ModelKind::RandomForest:
      return detail::forest_score(forest_, x);
  }
  return 0.0;
}

bool TrainedModel::predict(const featurize::SparseVec& x) const {
  const double s = score(x);
  return kind_ == ModelKind::SupportVector ? s >= 0.0 : s >= 0.5;
}

TrainedModel train(ModelKind kind, std::span<const featurize::SparseVec> rows,
                   std::span<const std::uint8_t> labels, std::size_t n_features,
                   std::uint64_t seed, const TrainConfig& config) {
  bool has_pos = false, has_neg = false;
  for (const auto y : labels) (y ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) {
    throw DegenerateModelError("training set contains a single class");
  }

  TrainedModel model;
  model.kind_ = kind;
  model.n_features_ = n_features;
  switch (kind) {
    case ModelKind::LogisticRegression:
      model.linear_ = detail::train_logistic(rows, labels, n_features, config.lr, model.objective_);
      break;
    case ModelKind::SupportVector:
      model.linear_ = detail::train_hinge(rows, labels, n_features, config.svm, model.objective_);
      break;
    case ModelKind::GradientBoosting:
      model.boosted_ = detail::train_boosted(rows, labels, config.gb);
      break;
    case ModelKind::MultilayerPerceptron:
      model.mlp_ = detail::train_mlp(rows, labels, n_features, config.mlp, seed, model.objective_);
      break;
    case ModelKind::RandomForest:
      model.forest_ = detail::train_forest(rows, labels, n_features, config.rf, seed);
      break;
  }
  return model;
}

EvalMetrics evaluate(const TrainedModel& model, std::span<const featurize::SparseVec> rows,
                     std::span<const std::uint8_t> labels) {
  EvalMetrics m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool predicted = model.predict(rows[i]);
    const bool actual = labels[i] != 0;
    if (predicted && actual) ++m.tp;
    else if (predicted && !actual) ++m.fp;
    else if (!predicted && actual) ++m.fn;
    else ++m.tn;
  }
  const double total = static_cast<double>(m.total());
  m.accuracy = total > 0 ? static_cast<double>(m.tp + m.tn) / total : 0.0;
  m.predicted_merit_rate = total > 0 ? static_cast<double>(m.tp + m.fp) / total : 0.0;
  m.merit_recall = (m.tp + m.fn) > 0
                       ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn)
                       : 0.0;
  const std::size_t pos_den = 2 * m.tp + m.fp + m.fn;
  m.f1_positive = pos_den > 0 ? 2.0 * static_cast<double>(m.tp) / static_cast<double>(pos_den) : 0.0;
  const std::size_t neg_den = 2 * m.tn + m.fp + m.fn;
  m.f1_negative = neg_den > 0 ? 2.0 * static_cast<double>(m.tn) / static_cast<double>(neg_den) : 0.0;
  return m;
}

std::vector<RunResult> run_repeated(ModelKind kind, featurize::Tag tag, const Dataset& data,
                                    const lexicon::SentimentLexicon& lex, const SplitSpec& spec,
                                    const TrainConfig& config) {
  std::vector<RunResult> results;
  results.reserve(static_cast<std::size_t>(spec.repetitions));

  for (int run = 0; run < spec.repetitions; ++run) {
    const Split s = split(data.size(), spec, run);

    std::vector<corpus::CleanedNarrative> train_docs;
    std::vector<std::uint8_t> train_labels;
    train_docs.reserve(s.train.size());
    for (const std::size_t i : s.train) {
      train_docs.push_back(data.docs[i]);
      train_labels.push_back(data.labels[i]);
    }

    const auto featurizer = featurize::Featurizer::build(train_docs, lex, tag);
    std::vector<featurize::SparseVec> train_rows;
    train_rows.reserve(s.train.size());
    for (const auto& doc : train_docs) train_rows.push_back(featurizer.vectorize(doc));

    const std::uint64_t seed =
        derive_seed(spec.master_seed ^ kTrainStream, static_cast<std::uint64_t>(run));
    TrainedModel model;
    try {
      model = train(kind, train_rows, train_labels, featurizer.vocab().size(), seed, config);
    } catch (const DegenerateModelError& e) {
      throw DegenerateModelError("run " + std::to_string(run) + ": " + e.what());
    }

    std::vector<featurize::SparseVec> test_rows;
    std::vector<std::uint8_t> test_labels;
    test_rows.reserve(s.test.size());
    for (const std::size_t i : s.test) {
      test_rows.push_back(featurizer.vectorize(data.docs[i]));
      test_labels.push_back(data.labels[i]);
    }

    RunResult r;
    r.run = run;
    r.n_test = s.test.size();
    r.metrics = evaluate(model, test_rows, test_labels);
    for (std::size_t j = 0; j < test_rows.size(); ++j) {
      if (model.predict(test_rows[j])) r.predicted_merit_rows.push_back(s.test[j]);
    }
    results.push_back(std::move(r));
  }
  return results;
}

void write_metrics_csv(const std::filesystem::path& file, std::span<const MetricsRow> rows) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write: " + file.string());
  out << "run,model,featurization,accuracy,predicted_merit_rate,merit_recall,"
         "f1_pos,f1_neg,n_test,n_predicted_merit\n";
  for (const auto& r : rows) {
    out << r.run << ',' << r.model << ',' << r.featurization << ','
        << format_double(r.metrics.accuracy) << ','
        << format_double(r.metrics.predicted_merit_rate) << ','
        << format_double(r.metrics.merit_recall) << ','
        << format_double(r.metrics.f1_positive) << ','
        << format_double(r.metrics.f1_negative) << ',' << r.n_test << ','
        << r.n_predicted_merit << '\n';
  }
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open metrics file: " + file.string());
  CsvReader reader(in);
  const auto header = reader.next_row();
  if (!header || header->size() != 10 || (*header)[0] != "run") {
    throw std::runtime_error("not a metrics file: " + file.string());
  }
  std::vector<MetricsRow> rows;
  while (auto row = reader.next_row()) {
    if (row->size() != 10) throw CsvError("metrics row needs 10 fields", reader.row_number());
    MetricsRow r;
    r.run = static_cast<int>(parse_long((*row)[0]).value_or(-1));
    r.model = (*row)[1];
    r.featurization = (*row)[2];
    r.metrics.accuracy = parse_double((*row)[3]).value_or(0.0);
    r.metrics.predicted_merit_rate = parse_double((*row)[4]).value_or(0.0);
    r.metrics.merit_recall = parse_double((*row)[5]).value_or(0.0);
    r.metrics.f1_positive = parse_double((*row)[6]).value_or(0.0);
    r.metrics.f1_negative = parse_double((*row)[7]).value_or(0.0);
    r.n_test = static_cast<std::size_t>(parse_long((*row)[8]).value_or(0));
    r.n_predicted_merit = static_cast<std::size_t>(parse_long((*row)[9]).value_or(0));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace meritscan::classify
