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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "meritscan/classify.hpp"
#include "meritscan/featurize.hpp"
#include "meritscan/lexicon.hpp"

using namespace meritscan;
using namespace meritscan::classify;
using featurize::SparseVec;
namespace fs = std::filesystem;

namespace {

constexpr ModelKind kAllKinds[] = {
    ModelKind::LogisticRegression, ModelKind::SupportVector, ModelKind::GradientBoosting,
    ModelKind::MultilayerPerceptron, ModelKind::RandomForest};

// Two disjoint indicator features: class 1 fires feature 0, class 0 fires
// feature 1. Separable with a wide margin.
void separable_data(std::size_t n, std::vector<SparseVec>& rows,
                    std::vector<std::uint8_t>& labels) {
  rows.clear();
  labels.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t label = i % 2;
    const double scale = 1.0 + 0.1 * static_cast<double>(i % 3);
    if (label) {
      rows.push_back({{0, scale}});
    } else {
      rows.push_back({{1, scale}});
    }
    labels.push_back(label);
  }
}

// A labeled corpus with a strong lexical signal and some per-row noise.
Dataset signal_dataset(std::size_t n) {
  Dataset data;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t label = i % 2;
    corpus::CleanedNarrative doc;
    doc.id = "doc" + std::to_string(i);
    if (label) {
      doc.tokens = {"bad", "fraud", "charge"};
    } else {
      doc.tokens = {"good", "happy", "charge"};
    }
    doc.tokens.push_back("w" + std::to_string(i % 7));
    data.ids.push_back(doc.id);
    data.docs.push_back(std::move(doc));
    data.labels.push_back(label);
  }
  return data;
}

lexicon::SentimentLexicon mini_lexicon() {
  return lexicon::SentimentLexicon::load(fs::path(MERITSCAN_FIXTURES_DIR) / "mini_lexicon.tsv");
}

bool non_increasing(const std::vector<double>& objective) {
  for (std::size_t i = 1; i < objective.size(); ++i) {
    const double slack = 1e-9 * std::max(1.0, std::abs(objective[i - 1]));
    if (objective[i] > objective[i - 1] + slack) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("splits partition the rows at the requested size") {
  SplitSpec spec;
  spec.test_fraction = 0.4;
  spec.master_seed = 42;

  const auto s = split(50, spec, 0);
  CHECK(s.test.size() == 20);  // round(0.4 * 50)
  CHECK(s.train.size() == 30);
  CHECK(std::is_sorted(s.test.begin(), s.test.end()));
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));

  std::set<std::size_t> all(s.test.begin(), s.test.end());
  for (const auto i : s.train) {
    CHECK(all.insert(i).second);  // no index on both sides
  }
  CHECK(all.size() == 50);
  CHECK(*all.rbegin() == 49);
}

TEST_CASE("test size follows round-half-away rounding") {
  SplitSpec spec;
  spec.test_fraction = 0.3;
  CHECK(split(5, spec, 0).test.size() == 2);  // round(1.5)
  spec.test_fraction = 0.4;
  CHECK(split(3, spec, 0).test.size() == 1);  // round(1.2)
}

TEST_CASE("splits are reproducible per run and differ across runs") {
  SplitSpec spec;
  spec.master_seed = 7;
  const auto a = split(50, spec, 3);
  const auto b = split(50, spec, 3);
  CHECK(a.test == b.test);
  CHECK(a.train == b.train);

  const auto c = split(50, spec, 4);
  CHECK(a.test != c.test);

  SplitSpec other = spec;
  other.master_seed = 8;
  CHECK(split(50, other, 3).test != a.test);
}

TEST_CASE("gradient-trained linear models separate a separable fixture") {
  std::vector<SparseVec> rows;
  std::vector<std::uint8_t> labels;
  separable_data(40, rows, labels);

  for (const ModelKind kind : {ModelKind::LogisticRegression, ModelKind::SupportVector}) {
    CAPTURE(kind_name(kind));
    const auto model = train(kind, rows, labels, 2, 1);
    const auto metrics = evaluate(model, rows, labels);
    CHECK(metrics.accuracy == 1.0);
    CHECK(metrics.tp == 20);
    CHECK(metrics.tn == 20);
  }
}

TEST_CASE("descent objectives never increase") {
  std::vector<SparseVec> rows;
  std::vector<std::uint8_t> labels;
  separable_data(40, rows, labels);

  for (const ModelKind kind : {ModelKind::LogisticRegression, ModelKind::SupportVector,
                               ModelKind::MultilayerPerceptron}) {
    CAPTURE(kind_name(kind));
    const auto model = train(kind, rows, labels, 2, 5);
    const auto& objective = model.objective_history();
    REQUIRE(!objective.empty());
    CHECK(non_increasing(objective));
    CHECK(objective.back() < objective.front());
  }

  // Tree ensembles are not fit by descent and record no trajectory.
  CHECK(train(ModelKind::RandomForest, rows, labels, 2, 5).objective_history().empty());
  CHECK(train(ModelKind::GradientBoosting, rows, labels, 2, 5).objective_history().empty());
}

TEST_CASE("every model kind is deterministic given its seed") {
  std::vector<SparseVec> rows;
  std::vector<std::uint8_t> labels;
  separable_data(50, rows, labels);

  for (const ModelKind kind : kAllKinds) {
    CAPTURE(kind_name(kind));
    const auto a = train(kind, rows, labels, 2, 99);
    const auto b = train(kind, rows, labels, 2, 99);
    for (const auto& row : rows) {
      CHECK(a.score(row) == b.score(row));
      CHECK(a.predict(row) == b.predict(row));
    }
  }
}

TEST_CASE("single-class training sets are refused") {
  std::vector<SparseVec> rows = {{{0, 1.0}}, {{0, 2.0}}, {{0, 3.0}}};
  std::vector<std::uint8_t> ones = {1, 1, 1};
  CHECK_THROWS_AS(train(ModelKind::LogisticRegression, rows, ones, 1, 0),
                  DegenerateModelError);
  std::vector<std::uint8_t> zeros = {0, 0, 0};
  CHECK_THROWS_AS(train(ModelKind::RandomForest, rows, zeros, 1, 0), DegenerateModelError);
}

TEST_CASE("evaluation counts the confusion cells and derives each rate") {
  std::vector<SparseVec> rows;
  std::vector<std::uint8_t> labels;
  separable_data(30, rows, labels);
  const auto model = train(ModelKind::LogisticRegression, rows, labels, 2, 3);

  // Flip some labels so every confusion cell is populated.
  auto noisy = labels;
  noisy[0] = 1 - noisy[0];
  noisy[1] = 1 - noisy[1];
  noisy[2] = 1 - noisy[2];
  const auto m = evaluate(model, rows, noisy);

  CHECK(m.total() == 30);
  CHECK(m.tp + m.fn == static_cast<std::size_t>(std::count(noisy.begin(), noisy.end(), 1)));
  const double total = 30.0;
  CHECK(m.accuracy == doctest::Approx((m.tp + m.tn) / total).epsilon(1e-15));
  CHECK(m.predicted_merit_rate == doctest::Approx((m.tp + m.fp) / total).epsilon(1e-15));
  CHECK(m.merit_recall ==
        doctest::Approx(static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn))
            .epsilon(1e-15));
  CHECK(m.f1_positive ==
        doctest::Approx(2.0 * m.tp / static_cast<double>(2 * m.tp + m.fp + m.fn))
            .epsilon(1e-15));
  CHECK(m.f1_negative ==
        doctest::Approx(2.0 * m.tn / static_cast<double>(2 * m.tn + m.fp + m.fn))
            .epsilon(1e-15));
}

TEST_CASE("repeated runs are reproducible end to end") {
  const auto data = signal_dataset(50);
  const auto lex = mini_lexicon();
  SplitSpec spec;
  spec.test_fraction = 0.4;
  spec.master_seed = 2024;
  spec.repetitions = 3;

  for (const ModelKind kind : {ModelKind::LogisticRegression, ModelKind::RandomForest}) {
    CAPTURE(kind_name(kind));
    const auto a = run_repeated(kind, featurize::Tag::TermImportance, data, lex, spec);
    const auto b = run_repeated(kind, featurize::Tag::TermImportance, data, lex, spec);
    REQUIRE(a.size() == 3);
    REQUIRE(b.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].run == static_cast<int>(i));
      CHECK(a[i].n_test == 20);
      CHECK(a[i].metrics.accuracy == b[i].metrics.accuracy);
      CHECK(a[i].predicted_merit_rows == b[i].predicted_merit_rows);
      // Predicted rows live in the test split.
      CHECK(a[i].predicted_merit_rows.size() <= a[i].n_test);
    }
  }
}

TEST_CASE("the lexical signal is learnable across featurizations") {
  const auto data = signal_dataset(50);
  const auto lex = mini_lexicon();
  SplitSpec spec;
  spec.test_fraction = 0.4;
  spec.master_seed = 5;
  spec.repetitions = 2;

  for (const featurize::Tag tag :
       {featurize::Tag::TermImportance, featurize::Tag::TermImportanceValence}) {
    const auto results =
        run_repeated(ModelKind::LogisticRegression, tag, data, lex, spec);
    for (const auto& r : results) {
      CHECK(r.metrics.accuracy > 0.9);
    }
  }
}

TEST_CASE("a one-class corpus fails with the run identified") {
  Dataset data = signal_dataset(20);
  std::fill(data.labels.begin(), data.labels.end(), std::uint8_t{1});
  const auto lex = mini_lexicon();
  SplitSpec spec;
  spec.repetitions = 1;
  try {
    run_repeated(ModelKind::LogisticRegression, featurize::Tag::TermImportance, data, lex, spec);
    FAIL("expected DegenerateModelError");
  } catch (const DegenerateModelError& e) {
    CHECK(std::string(e.what()).find("run 0") != std::string::npos);
  }
}

TEST_CASE("metrics artifacts round trip") {
  std::vector<MetricsRow> rows;
  MetricsRow r;
  r.run = 7;
  r.model = "lr";
  r.featurization = "tfidf";
  r.metrics.accuracy = 0.8125;
  r.metrics.predicted_merit_rate = 0.4375;
  r.metrics.merit_recall = 2.0 / 3.0;
  r.metrics.f1_positive = 0.64;
  r.metrics.f1_negative = 0.871;
  r.n_test = 16;
  r.n_predicted_merit = 7;
  rows.push_back(r);

  const auto path = fs::temp_directory_path() / "metrics_roundtrip.csv";
  write_metrics_csv(path, rows);
  const auto back = read_metrics_csv(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].run == r.run);
  CHECK(back[0].model == r.model);
  CHECK(back[0].featurization == r.featurization);
  CHECK(back[0].metrics.accuracy == r.metrics.accuracy);
  CHECK(back[0].metrics.predicted_merit_rate == r.metrics.predicted_merit_rate);
  CHECK(back[0].metrics.merit_recall == r.metrics.merit_recall);
  CHECK(back[0].metrics.f1_positive == r.metrics.f1_positive);
  CHECK(back[0].metrics.f1_negative == r.metrics.f1_negative);
  CHECK(back[0].n_test == r.n_test);
  CHECK(back[0].n_predicted_merit == r.n_predicted_merit);
}
