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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "meritscan/rng.hpp"
#include "model_internal.hpp"

namespace meritscan::classify::detail {

namespace {

double value_at(const featurize::SparseVec& x, std::uint32_t col) {
  const auto it = std::lower_bound(
      x.begin(), x.end(), col,
      [](const auto& entry, std::uint32_t c) { return entry.first < c; });
  return (it != x.end() && it->first == col) ? it->second : 0.0;
}

struct BestSplit {
  std::int32_t feature = -1;
  double threshold = 0.0;
  double score = std::numeric_limits<double>::infinity();
};

double gini(double pos, double n) {
  if (n <= 0) return 0.0;
  const double p = pos / n;
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

// Shared scratch for growing one tree.
struct TreeBuilder {
  Rows rows;
  Labels labels;
  const std::vector<double>* targets = nullptr;  // regression mode
  std::vector<std::uint32_t> feature_order;      // permuted in place per split
  Rng* rng = nullptr;
  std::size_t features_per_split = 0;
  int max_depth = 0;
  Tree tree;

  std::vector<std::pair<double, std::size_t>> scratch;  // (value, row position)

  // Minimal weighted Gini over candidate thresholds of one feature.
  void consider_classification(std::uint32_t feature, const std::vector<std::size_t>& node_rows,
                               BestSplit& best) {
    gather(feature, node_rows);
    const double n = static_cast<double>(node_rows.size());
    double left_pos = 0.0, total_pos = 0.0;
    for (const auto& [value, row] : scratch) total_pos += labels[row] ? 1.0 : 0.0;

    for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
      left_pos += labels[scratch[i].second] ? 1.0 : 0.0;
      if (scratch[i].first == scratch[i + 1].first) continue;
      const double nl = static_cast<double>(i + 1);
      const double nr = n - nl;
      const double score =
          (nl * gini(left_pos, nl) + nr * gini(total_pos - left_pos, nr)) / n;
      if (score < best.score) {
        best.score = score;
        best.feature = static_cast<std::int32_t>(feature);
        best.threshold = (scratch[i].first + scratch[i + 1].first) / 2.0;
      }
    }
  }

  // Minimal total squared error around the leaf means.
  void consider_regression(std::uint32_t feature, const std::vector<std::size_t>& node_rows,
                           BestSplit& best) {
    gather(feature, node_rows);
    const auto& y = *targets;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [value, row] : scratch) {
      sum += y[row];
      sum_sq += y[row] * y[row];
    }
    double left_sum = 0.0, left_sq = 0.0;
    const double n = static_cast<double>(node_rows.size());
    for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
      const double yi = y[scratch[i].second];
      left_sum += yi;
      left_sq += yi * yi;
      if (scratch[i].first == scratch[i + 1].first) continue;
      const double nl = static_cast<double>(i + 1);
      const double nr = n - nl;
      const double sse_left = left_sq - left_sum * left_sum / nl;
      const double sse_right = (sum_sq - left_sq) - (sum - left_sum) * (sum - left_sum) / nr;
      const double score = sse_left + sse_right;
      if (score < best.score) {
        best.score = score;
        best.feature = static_cast<std::int32_t>(feature);
        best.threshold = (scratch[i].first + scratch[i + 1].first) / 2.0;
      }
    }
  }

  void gather(std::uint32_t feature, const std::vector<std::size_t>& node_rows) {
    scratch.clear();
    scratch.reserve(node_rows.size());
    for (const std::size_t row : node_rows) {
      scratch.emplace_back(value_at(rows[row], feature), row);
    }
    std::stable_sort(scratch.begin(), scratch.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  // Candidate features for one split. With no rng every feature is a
  // candidate (boosting); otherwise a random subset without replacement.
  std::span<const std::uint32_t> sample_features() {
    if (!rng || features_per_split >= feature_order.size()) return feature_order;
    const std::size_t total = feature_order.size();
    for (std::size_t k = 0; k < features_per_split; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng->below(total - k));
      std::swap(feature_order[k], feature_order[j]);
    }
    return {feature_order.data(), features_per_split};
  }

  std::int32_t grow(const std::vector<std::size_t>& node_rows, int depth) {
    const auto index = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();

    double leaf_value;
    bool pure;
    if (targets) {
      double sum = 0.0;
      for (const std::size_t row : node_rows) sum += (*targets)[row];
      leaf_value = sum / static_cast<double>(node_rows.size());
      pure = false;
    } else {
      double pos = 0.0;
      for (const std::size_t row : node_rows) pos += labels[row] ? 1.0 : 0.0;
      leaf_value = pos / static_cast<double>(node_rows.size());
      pure = leaf_value == 0.0 || leaf_value == 1.0;
    }
    tree.nodes[index].value = leaf_value;
    if (depth >= max_depth || node_rows.size() < 2 || pure) return index;

    BestSplit best;
    if (!targets) {
      // A split must beat the parent's impurity to be worth keeping.
      double pos = leaf_value * static_cast<double>(node_rows.size());
      best.score = gini(pos, static_cast<double>(node_rows.size())) - 1e-12;
    }
    BestSplit chosen;
    for (const std::uint32_t feature : sample_features()) {
      BestSplit candidate = best;
      if (targets) consider_regression(feature, node_rows, candidate);
      else consider_classification(feature, node_rows, candidate);
      if (candidate.feature >= 0 && candidate.score < (chosen.feature >= 0 ? chosen.score : best.score)) {
        chosen = candidate;
      }
    }
    if (chosen.feature < 0) return index;

    std::vector<std::size_t> left_rows, right_rows;
    for (const std::size_t row : node_rows) {
      const double v = value_at(rows[row], static_cast<std::uint32_t>(chosen.feature));
      (v <= chosen.threshold ? left_rows : right_rows).push_back(row);
    }
    if (left_rows.empty() || right_rows.empty()) return index;

    tree.nodes[index].feature = chosen.feature;
    tree.nodes[index].threshold = chosen.threshold;
    const auto left = grow(left_rows, depth + 1);
    tree.nodes[index].left = left;
    const auto right = grow(right_rows, depth + 1);
    tree.nodes[index].right = right;
    return index;
  }
};

}  // namespace

ForestModel train_forest(Rows rows, Labels labels, std::size_t n_features,
                         const RfParams& params, std::uint64_t seed) {
  ForestModel forest;
  forest.trees.reserve(static_cast<std::size_t>(params.n_trees));
  const auto per_split = static_cast<std::size_t>(
      std::max(1.0, std::ceil(std::sqrt(static_cast<double>(n_features)))));

  for (int t = 0; t < params.n_trees; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));

    std::vector<std::size_t> sample(rows.size());
    if (params.bootstrap) {
      for (auto& row : sample) row = static_cast<std::size_t>(rng.below(rows.size()));
    } else {
      std::iota(sample.begin(), sample.end(), std::size_t{0});
    }

    TreeBuilder builder;
    builder.rows = rows;
    builder.labels = labels;
    builder.rng = &rng;
    builder.features_per_split = per_split;
    builder.max_depth = params.max_depth;
    builder.feature_order.resize(n_features);
    std::iota(builder.feature_order.begin(), builder.feature_order.end(), 0u);
    builder.grow(sample, 0);
    forest.trees.push_back(std::move(builder.tree));
  }
  return forest;
}

double forest_score(const ForestModel& model, const featurize::SparseVec& x) {
  if (model.trees.empty()) return 0.0;
  std::size_t votes = 0;
  for (const auto& tree : model.trees) {
    if (tree.predict(x) >= 0.5) ++votes;
  }
  return static_cast<double>(votes) / static_cast<double>(model.trees.size());
}

BoostedModel train_boosted(Rows rows, Labels labels, const GbParams& params) {
  std::size_t n_features = 0;
  for (const auto& row : rows) {
    if (!row.empty()) n_features = std::max(n_features, static_cast<std::size_t>(row.back().first) + 1);
  }

  BoostedModel model;
  model.shrinkage = params.shrinkage;
  double pos = 0.0;
  for (const auto y : labels) pos += y ? 1.0 : 0.0;
  double p = pos / static_cast<double>(labels.size());
  p = std::clamp(p, 1e-9, 1.0 - 1e-9);
  model.f0 = std::log(p / (1.0 - p));

  std::vector<double> margin(rows.size(), model.f0);
  std::vector<double> residual(rows.size());
  std::vector<std::size_t> all_rows(rows.size());
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});

  for (int t = 0; t < params.n_trees; ++t) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      residual[i] = (labels[i] ? 1.0 : 0.0) - sigmoid(margin[i]);
    }
    TreeBuilder builder;
    builder.rows = rows;
    builder.labels = labels;
    builder.targets = &residual;
    builder.max_depth = params.max_depth;
    builder.feature_order.resize(n_features);
    std::iota(builder.feature_order.begin(), builder.feature_order.end(), 0u);
    builder.grow(all_rows, 0);

    for (std::size_t i = 0; i < rows.size(); ++i) {
      margin[i] += params.shrinkage * builder.tree.predict(rows[i]);
    }
    model.trees.push_back(std::move(builder.tree));
  }
  return model;
}

double boosted_score(const BoostedModel& model, const featurize::SparseVec& x) {
  double margin = model.f0;
  for (const auto& tree : model.trees) margin += model.shrinkage * tree.predict(x);
  return sigmoid(margin);
}

}  // namespace meritscan::classify::detail
