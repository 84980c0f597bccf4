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

#ifndef MERITSCAN_CLASSIFY_HPP
#define MERITSCAN_CLASSIFY_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "meritscan/corpus.hpp"
#include "meritscan/featurize.hpp"
#include "meritscan/lexicon.hpp"

namespace meritscan::classify {

struct DegenerateModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ModelKind {
  LogisticRegression,
  SupportVector,
  GradientBoosting,
  MultilayerPerceptron,
  RandomForest,
};

const char* kind_name(ModelKind kind);

// Parameters of the repeated random-split protocol.
struct SplitSpec {
  double test_fraction = 0.4;
  std::uint64_t master_seed = 0;
  int repetitions = 500;
};

// Labeled corpus: ids, cleaned narratives and merit labels share indices.
struct Dataset {
  std::vector<std::string> ids;
  std::vector<corpus::CleanedNarrative> docs;
  std::vector<std::uint8_t> labels;  // 1 = meritorious
  std::size_t size() const { return docs.size(); }
};

struct LrParams {
  double lambda = 1e-4;
  int epochs = 300;
  double learning_rate = 0.1;
  double decay = 0.99;
};

struct SvmParams {
  double lambda = 1e-4;
  int epochs = 300;
  double learning_rate = 0.1;
  double decay = 0.99;
};

struct RfParams {
  int n_trees = 100;
  int max_depth = 12;
  bool bootstrap = true;
};

struct GbParams {
  int n_trees = 100;
  int max_depth = 2;
  double shrinkage = 0.1;
};

struct MlpParams {
  int hidden_units = 64;
  int epochs = 200;
  double learning_rate = 0.1;
  double decay = 0.99;
};

struct TrainConfig {
  LrParams lr;
  SvmParams svm;
  RfParams rf;
  GbParams gb;
  MlpParams mlp;
};

// Axis-aligned decision tree stored as a flat node array. Shared between
// the forest (classification leaves hold positive-class fractions) and
// the boosting stages (regression leaves hold residual means).
struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;
  double predict(const featurize::SparseVec& x) const;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
};

struct MlpModel {
  int hidden = 0;
  std::vector<double> w1;  // hidden x n_features, row-major
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;
};

struct ForestModel {
  std::vector<Tree> trees;
};

struct BoostedModel {
  double f0 = 0.0;
  double shrinkage = 0.1;
  std::vector<Tree> trees;
};

class TrainedModel {
 public:
  ModelKind kind() const { return kind_; }
  std::size_t n_features() const { return n_features_; }

  // Probability for the probabilistic models, margin for the max-margin
  // one. predict() applies the matching threshold (0.5 or 0).
  double score(const featurize::SparseVec& x) const;
  bool predict(const featurize::SparseVec& x) const;

  // Objective value before training and after each epoch; empty for the
  // tree ensembles, which are not fit by gradient descent.
  const std::vector<double>& objective_history() const { return objective_; }

 private:
  friend TrainedModel train(ModelKind, std::span<const featurize::SparseVec>,
                            std::span<const std::uint8_t>, std::size_t, std::uint64_t,
                            const TrainConfig&);
  ModelKind kind_ = ModelKind::LogisticRegression;
  std::size_t n_features_ = 0;
  LinearModel linear_;
  MlpModel mlp_;
  ForestModel forest_;
  BoostedModel boosted_;
  std::vector<double> objective_;
};

// Deterministic train/test partition of row indices 0..n-1 for one run.
// |test| = round(test_fraction * n); both sides are returned sorted.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
Split split(std::size_t n_rows, const SplitSpec& spec, int run_index);

// Trains one model. Both classes must be present in the labels.
TrainedModel train(ModelKind kind, std::span<const featurize::SparseVec> rows,
                   std::span<const std::uint8_t> labels, std::size_t n_features,
                   std::uint64_t seed, const TrainConfig& config = {});

struct EvalMetrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0.0;
  double predicted_merit_rate = 0.0;
  double merit_recall = 0.0;
  double f1_positive = 0.0;
  double f1_negative = 0.0;
  std::size_t total() const { return tp + fp + tn + fn; }
};

EvalMetrics evaluate(const TrainedModel& model, std::span<const featurize::SparseVec> rows,
                     std::span<const std::uint8_t> labels);

// One repetition: metrics plus the predicted-meritorious subset of the
// test rows (indices into the dataset).
struct RunResult {
  int run = 0;
  EvalMetrics metrics;
  std::vector<std::size_t> predicted_merit_rows;
  std::size_t n_test = 0;
};

// The full repeated-split protocol. Each run re-fits the featurizer on
// its training split so test-only words never leak into the vocabulary.
std::vector<RunResult> run_repeated(ModelKind kind, featurize::Tag tag, const Dataset& data,
                                    const lexicon::SentimentLexicon& lex, const SplitSpec& spec,
                                    const TrainConfig& config = {});

struct MetricsRow {
  int run;
  std::string model;
  std::string featurization;
  EvalMetrics metrics;
  std::size_t n_test;
  std::size_t n_predicted_merit;
};

void write_metrics_csv(const std::filesystem::path& file, std::span<const MetricsRow> rows);
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& file);

}  // namespace meritscan::classify

#endif  // MERITSCAN_CLASSIFY_HPP
