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

#ifndef MERITSCAN_SRC_MODEL_INTERNAL_HPP
#define MERITSCAN_SRC_MODEL_INTERNAL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "meritscan/classify.hpp"

namespace meritscan::classify::detail {

using Rows = std::span<const featurize::SparseVec>;
using Labels = std::span<const std::uint8_t>;

double dot(const LinearModel& model, const featurize::SparseVec& x);
double sigmoid(double z);

LinearModel train_logistic(Rows rows, Labels labels, std::size_t n_features,
                           const LrParams& params, std::vector<double>& history);
LinearModel train_hinge(Rows rows, Labels labels, std::size_t n_features,
                        const SvmParams& params, std::vector<double>& history);
MlpModel train_mlp(Rows rows, Labels labels, std::size_t n_features, const MlpParams& params,
                   std::uint64_t seed, std::vector<double>& history);
double mlp_forward(const MlpModel& model, const featurize::SparseVec& x);

ForestModel train_forest(Rows rows, Labels labels, std::size_t n_features,
                         const RfParams& params, std::uint64_t seed);
BoostedModel train_boosted(Rows rows, Labels labels, const GbParams& params);
double forest_score(const ForestModel& model, const featurize::SparseVec& x);
double boosted_score(const BoostedModel& model, const featurize::SparseVec& x);

}  // namespace meritscan::classify::detail

#endif  // MERITSCAN_SRC_MODEL_INTERNAL_HPP
