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

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace dfusion {

inline constexpr double kProbabilityEpsilon = 1e-12;

inline double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -(1/N) sum [y log p + (1 - y) log(1 - p)] with p clipped to
// [1e-12, 1 - 1e-12]. Throws InvalidArgument on length mismatch or empty
// input.
double BceLoss(std::span<const int> labels, std::span<const double> probs);

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;
  double accuracy = 0.0;
};

using TrainingHistory = std::vector<EpochStats>;

// CSV with header "epoch,loss,accuracy".
void WriteHistoryCsv(const TrainingHistory& history, const std::string& path);

// Per-feature z-score statistics; a zero spread is replaced by 1.
struct NormStats {
  std::vector<double> mean;
  std::vector<double> std;

  static NormStats Fit(const std::vector<std::vector<double>>& rows);
  std::vector<double> Apply(std::span<const double> row) const;
};

// Momentum SGD on a flat parameter vector: v = m v - lr g; p += v.
void MomentumStep(std::vector<double>& params, std::vector<double>& velocity,
                  const std::vector<double>& grad, double learning_rate,
                  double momentum);

}  // namespace dfusion
