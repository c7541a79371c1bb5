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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/dataset.hpp"
#include "core/rng.hpp"
#include "learn/common.hpp"

namespace dfusion {

struct AnnConfig {
  std::vector<std::size_t> hidden = {64, 32};
  std::size_t batch_size = 32;
  double learning_rate = 0.01;
  double momentum = 0.9;
  int epochs = 200;
};

// Feedforward network: rectifier hidden layers, logistic output unit.
// Parameters live in one flat vector; layer l stores its weights w[j][i]
// (output j, input i, row-major) followed by its biases b[j].
struct AnnModel {
  std::vector<std::size_t> layer_dims;  // input, hidden..., 1
  std::vector<double> params;
  NormStats norm;
  AnnConfig config;
  std::uint64_t seed = 0;
  TrainingHistory history;

  std::size_t layers() const { return layer_dims.size() - 1; }
  std::size_t WeightOffset(std::size_t layer) const;
  std::size_t BiasOffset(std::size_t layer) const;
  std::size_t ParameterCount() const;
};

// Allocates zeroed parameters for the given dims. Throws InvalidArgument
// unless dims has >= 2 entries, all positive, ending in 1.
AnnModel MakeAnn(std::vector<std::size_t> layer_dims);

// a_j = sigma(sum_i w_ij a_i + b_j), layer by layer, on an already
// normalized input.
double AnnForward(const AnnModel& model, std::span<const double> x);
// Normalizes with the model's statistics, then runs AnnForward.
double AnnPredict(const AnnModel& model, std::span<const double> raw);

// Mean BCE over the batch and its gradient with respect to params.
double AnnLossAndGradient(const AnnModel& model,
                          const std::vector<std::vector<double>>& inputs,
                          std::span<const int> labels,
                          std::vector<double>& grad);

// Mini-batch momentum SGD on BCE. Deterministic for a fixed rng seed.
// Throws NumericError naming the epoch if the loss becomes non-finite.
AnnModel TrainAnn(const Dataset& train, const AnnConfig& config,
                  SeededRng& rng);

}  // namespace dfusion
