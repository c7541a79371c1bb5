/* Copyright 2026 The dfusion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "learn/ann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace dfusion {

std::size_t AnnModel::WeightOffset(std::size_t layer) const {
  std::size_t offset = 0;
  for (std::size_t l = 0; l < layer; ++l) {
    offset += layer_dims[l + 1] * (layer_dims[l] + 1);
  }
  return offset;
}

std::size_t AnnModel::BiasOffset(std::size_t layer) const {
  return WeightOffset(layer) + layer_dims[layer + 1] * layer_dims[layer];
}

std::size_t AnnModel::ParameterCount() const { return WeightOffset(layers()); }

AnnModel MakeAnn(std::vector<std::size_t> layer_dims) {
  if (layer_dims.size() < 2 || layer_dims.back() != 1 ||
      std::find(layer_dims.begin(), layer_dims.end(), 0u) != layer_dims.end()) {
    throw InvalidArgument("ANN layer dims must be positive and end in 1");
  }
  AnnModel m;
  m.layer_dims = std::move(layer_dims);
  m.params.assign(m.ParameterCount(), 0.0);
  m.norm.mean.assign(m.layer_dims.front(), 0.0);
  m.norm.std.assign(m.layer_dims.front(), 1.0);
  return m;
}

namespace {

// Returns the activations of every layer; the last holds the probability.
std::vector<std::vector<double>> ForwardAll(const AnnModel& model,
                                            std::span<const double> x) {
  if (x.size() != model.layer_dims.front()) {
    throw InvalidArgument("ANN input has " + std::to_string(x.size()) +
                          " values, expected " +
                          std::to_string(model.layer_dims.front()));
  }
  std::vector<std::vector<double>> acts;
  acts.emplace_back(x.begin(), x.end());
  for (std::size_t l = 0; l < model.layers(); ++l) {
    const std::size_t in = model.layer_dims[l];
    const std::size_t out = model.layer_dims[l + 1];
    const double* w = model.params.data() + model.WeightOffset(l);
    const double* b = model.params.data() + model.BiasOffset(l);
    const std::vector<double>& prev = acts.back();
    std::vector<double> next(out);
    const bool last = l + 1 == model.layers();
    for (std::size_t j = 0; j < out; ++j) {
      double z = b[j];
      for (std::size_t i = 0; i < in; ++i) z += w[j * in + i] * prev[i];
      next[j] = last ? Sigmoid(z) : std::max(0.0, z);
    }
    acts.push_back(std::move(next));
  }
  return acts;
}

}  // namespace

double AnnForward(const AnnModel& model, std::span<const double> x) {
  return ForwardAll(model, x).back()[0];
}

double AnnPredict(const AnnModel& model, std::span<const double> raw) {
  const std::vector<double> x = model.norm.Apply(raw);
  return AnnForward(model, x);
}

double AnnLossAndGradient(const AnnModel& model,
                          const std::vector<std::vector<double>>& inputs,
                          std::span<const int> labels,
                          std::vector<double>& grad) {
  grad.assign(model.ParameterCount(), 0.0);
  std::vector<double> probs;
  probs.reserve(inputs.size());
  const double scale = 1.0 / static_cast<double>(inputs.size());
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const auto acts = ForwardAll(model, inputs[s]);
    const double p = acts.back()[0];
    probs.push_back(p);
    // Logistic output with BCE: dL/dz = p - y.
    std::vector<double> delta = {(p - labels[s]) * scale};
    for (std::size_t l = model.layers(); l-- > 0;) {
      const std::size_t in = model.layer_dims[l];
      const std::size_t out = model.layer_dims[l + 1];
      const double* w = model.params.data() + model.WeightOffset(l);
      double* gw = grad.data() + model.WeightOffset(l);
      double* gb = grad.data() + model.BiasOffset(l);
      const std::vector<double>& prev = acts[l];
      std::vector<double> prev_delta(in, 0.0);
      for (std::size_t j = 0; j < out; ++j) {
        gb[j] += delta[j];
        for (std::size_t i = 0; i < in; ++i) {
          gw[j * in + i] += delta[j] * prev[i];
          prev_delta[i] += delta[j] * w[j * in + i];
        }
      }
      if (l > 0) {
        for (std::size_t i = 0; i < in; ++i) {
          if (prev[i] <= 0.0) prev_delta[i] = 0.0;
        }
      }
      delta = std::move(prev_delta);
    }
  }
  return BceLoss(labels, probs);
}

AnnModel TrainAnn(const Dataset& train, const AnnConfig& config,
                  SeededRng& rng) {
  if (train.empty()) throw DataError("ANN: empty training set");
  if (!train.FullyLabeled()) throw DataError("ANN: unlabeled training rows");
  if (config.batch_size == 0 || config.epochs < 1) {
    throw InvalidArgument("ANN: batch size and epochs must be positive");
  }
  std::vector<std::size_t> dims = {train.dims()};
  dims.insert(dims.end(), config.hidden.begin(), config.hidden.end());
  dims.push_back(1);
  AnnModel model = MakeAnn(dims);
  model.config = config;
  model.seed = rng.seed();
  model.norm = NormStats::Fit(train.rows);

  // Glorot-uniform weights, zero biases.
  for (std::size_t l = 0; l < model.layers(); ++l) {
    const double limit = std::sqrt(
        6.0 / static_cast<double>(model.layer_dims[l] + model.layer_dims[l + 1]));
    double* w = model.params.data() + model.WeightOffset(l);
    const std::size_t count = model.layer_dims[l] * model.layer_dims[l + 1];
    for (std::size_t i = 0; i < count; ++i) w[i] = rng.Uniform(-limit, limit);
  }

  std::vector<std::vector<double>> inputs;
  inputs.reserve(train.size());
  for (const auto& row : train.rows) inputs.push_back(model.norm.Apply(row));

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> velocity(model.ParameterCount(), 0.0);
  std::vector<double> grad;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<std::vector<double>> batch;
      std::vector<int> labels;
      for (std::size_t k = start; k < end; ++k) {
        batch.push_back(inputs[order[k]]);
        labels.push_back(train.labels[order[k]]);
      }
      const double loss = AnnLossAndGradient(model, batch, labels, grad);
      loss_sum += loss * static_cast<double>(end - start);
      MomentumStep(model.params, velocity, grad, config.learning_rate,
                   config.momentum);
    }
    const double epoch_loss = loss_sum / static_cast<double>(order.size());
    if (!std::isfinite(epoch_loss)) {
      throw NumericError("ANN training diverged at epoch " +
                         std::to_string(epoch));
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const int pred = AnnForward(model, inputs[i]) >= 0.5 ? 1 : 0;
      if (pred == train.labels[i]) ++correct;
    }
    model.history.push_back(
        {epoch, epoch_loss,
         static_cast<double>(correct) / static_cast<double>(inputs.size())});
  }
  return model;
}

}  // namespace dfusion
