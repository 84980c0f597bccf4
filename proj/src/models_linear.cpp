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

#include <cmath>

#include "meritscan/rng.hpp"
#include "model_internal.hpp"

namespace meritscan::classify::detail {

namespace {

// Full-batch gradient descent with a halving safeguard: a step that would
// increase the objective is retried at half the length, which keeps the
// per-epoch objective non-increasing without tuning the base rate to the
// data scale.
template <typename Objective, typename Gradient>
void descend(std::vector<double>& w, double& b, int epochs, double base_rate, double decay,
             Objective objective, Gradient gradient, std::vector<double>& history) {
  std::vector<double> grad_w(w.size());
  double grad_b = 0.0;
  std::vector<double> trial_w(w.size());

  double current = objective(w, b);
  history.clear();
  history.push_back(current);

  double rate = base_rate;
  for (int epoch = 0; epoch < epochs; ++epoch, rate *= decay) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    grad_b = 0.0;
    gradient(w, b, grad_w, grad_b);

    double step = rate;
    bool accepted = false;
    for (int attempt = 0; attempt < 60; ++attempt, step *= 0.5) {
      for (std::size_t j = 0; j < w.size(); ++j) trial_w[j] = w[j] - step * grad_w[j];
      const double trial_b = b - step * grad_b;
      const double value = objective(trial_w, trial_b);
      if (value <= current) {
        w.swap(trial_w);
        b = trial_b;
        current = value;
        accepted = true;
        break;
      }
    }
    // No acceptable step: the iterate is already at numerical rest.
    (void)accepted;
    history.push_back(current);
  }
}

double sparse_dot(const std::vector<double>& w, const featurize::SparseVec& x) {
  double z = 0.0;
  for (const auto& [col, value] : x) z += w[col] * value;
  return z;
}

// log(1 + e^z) without overflow.
double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace

double dot(const LinearModel& model, const featurize::SparseVec& x) {
  return model.bias + sparse_dot(model.weights, x);
}

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LinearModel train_logistic(Rows rows, Labels labels, std::size_t n_features,
                           const LrParams& params, std::vector<double>& history) {
  const double n = static_cast<double>(rows.size());

  const auto objective = [&](const std::vector<double>& w, double b) {
    double loss = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double z = b + sparse_dot(w, rows[i]);
      loss += softplus(z) - (labels[i] ? z : 0.0);
    }
    double reg = 0.0;
    for (const double wj : w) reg += wj * wj;
    return loss / n + 0.5 * params.lambda * reg;
  };

  const auto gradient = [&](const std::vector<double>& w, double b,
                            std::vector<double>& grad_w, double& grad_b) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double z = b + sparse_dot(w, rows[i]);
      const double err = (sigmoid(z) - (labels[i] ? 1.0 : 0.0)) / n;
      for (const auto& [col, value] : rows[i]) grad_w[col] += err * value;
      grad_b += err;
    }
    for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] += params.lambda * w[j];
  };

  LinearModel model;
  model.weights.assign(n_features, 0.0);
  descend(model.weights, model.bias, params.epochs, params.learning_rate, params.decay,
          objective, gradient, history);
  return model;
}

LinearModel train_hinge(Rows rows, Labels labels, std::size_t n_features,
                        const SvmParams& params, std::vector<double>& history) {
  const double n = static_cast<double>(rows.size());
  const auto sign = [&](std::size_t i) { return labels[i] ? 1.0 : -1.0; };

  const auto objective = [&](const std::vector<double>& w, double b) {
    double loss = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double margin = sign(i) * (b + sparse_dot(w, rows[i]));
      loss += std::max(0.0, 1.0 - margin);
    }
    double reg = 0.0;
    for (const double wj : w) reg += wj * wj;
    return loss / n + 0.5 * params.lambda * reg;
  };

  const auto gradient = [&](const std::vector<double>& w, double b,
                            std::vector<double>& grad_w, double& grad_b) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double s = sign(i);
      if (s * (b + sparse_dot(w, rows[i])) < 1.0) {
        for (const auto& [col, value] : rows[i]) grad_w[col] -= s * value / n;
        grad_b -= s / n;
      }
    }
    for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] += params.lambda * w[j];
  };

  LinearModel model;
  model.weights.assign(n_features, 0.0);
  descend(model.weights, model.bias, params.epochs, params.learning_rate, params.decay,
          objective, gradient, history);
  return model;
}

double mlp_forward(const MlpModel& model, const featurize::SparseVec& x) {
  const std::size_t hidden = static_cast<std::size_t>(model.hidden);
  const std::size_t n_features = model.hidden > 0 ? model.w1.size() / hidden : 0;
  double out = model.b2;
  for (std::size_t j = 0; j < hidden; ++j) {
    double a = model.b1[j];
    const double* row = model.w1.data() + j * n_features;
    for (const auto& [col, value] : x) a += row[col] * value;
    if (a > 0) out += model.w2[j] * a;
  }
  return sigmoid(out);
}

MlpModel train_mlp(Rows rows, Labels labels, std::size_t n_features, const MlpParams& params,
                   std::uint64_t seed, std::vector<double>& history) {
  const std::size_t hidden = static_cast<std::size_t>(params.hidden_units);
  const double n = static_cast<double>(rows.size());

  MlpModel model;
  model.hidden = params.hidden_units;
  model.w1.resize(hidden * n_features);
  model.b1.assign(hidden, 0.0);
  model.w2.resize(hidden);

  Rng rng(seed);
  const double limit1 = std::sqrt(6.0 / static_cast<double>(n_features + hidden));
  for (auto& w : model.w1) w = rng.uniform(-limit1, limit1);
  const double limit2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
  for (auto& w : model.w2) w = rng.uniform(-limit2, limit2);

  std::vector<double> activations(hidden);
  const auto forward = [&](const featurize::SparseVec& x) {
    double out = model.b2;
    for (std::size_t j = 0; j < hidden; ++j) {
      double a = model.b1[j];
      const double* row = model.w1.data() + j * n_features;
      for (const auto& [col, value] : x) a += row[col] * value;
      activations[j] = a;
      if (a > 0) out += model.w2[j] * a;
    }
    return out;
  };

  const auto mean_loss = [&] {
    double loss = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double z = forward(rows[i]);
      loss += z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
      if (labels[i]) loss -= z;
    }
    return loss / n;
  };

  history.clear();
  history.push_back(mean_loss());

  std::vector<double> grad_w1(model.w1.size());
  std::vector<double> grad_b1(hidden);
  std::vector<double> grad_w2(hidden);
  double rate = params.learning_rate;
  for (int epoch = 0; epoch < params.epochs; ++epoch, rate *= params.decay) {
    std::fill(grad_w1.begin(), grad_w1.end(), 0.0);
    std::fill(grad_b1.begin(), grad_b1.end(), 0.0);
    std::fill(grad_w2.begin(), grad_w2.end(), 0.0);
    double grad_b2 = 0.0;

    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double z = forward(rows[i]);
      const double delta_out = (sigmoid(z) - (labels[i] ? 1.0 : 0.0)) / n;
      grad_b2 += delta_out;
      for (std::size_t j = 0; j < hidden; ++j) {
        const double h = activations[j] > 0 ? activations[j] : 0.0;
        grad_w2[j] += delta_out * h;
        if (activations[j] > 0) {
          const double delta_h = delta_out * model.w2[j];
          grad_b1[j] += delta_h;
          double* row = grad_w1.data() + j * n_features;
          for (const auto& [col, value] : rows[i]) row[col] += delta_h * value;
        }
      }
    }

    for (std::size_t j = 0; j < model.w1.size(); ++j) model.w1[j] -= rate * grad_w1[j];
    for (std::size_t j = 0; j < hidden; ++j) {
      model.b1[j] -= rate * grad_b1[j];
      model.w2[j] -= rate * grad_w2[j];
    }
    model.b2 -= rate * grad_b2;
    history.push_back(mean_loss());
  }
  return model;
}

}  // namespace meritscan::classify::detail
