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

#include "learn/common.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "core/error.hpp"

namespace dfusion {

double BceLoss(std::span<const int> labels, std::span<const double> probs) {
  if (labels.size() != probs.size()) {
    throw InvalidArgument("BCE: label/probability length mismatch");
  }
  if (labels.empty()) throw InvalidArgument("BCE: no samples");
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p =
        std::clamp(probs[i], kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
    sum += labels[i] * std::log(p) + (1 - labels[i]) * std::log(1.0 - p);
  }
  return -sum / static_cast<double>(labels.size());
}

void WriteHistoryCsv(const TrainingHistory& history, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot write");
  out << "epoch,loss,accuracy\n";
  char buf[96];
  for (const EpochStats& e : history) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", e.epoch, e.loss,
                  e.accuracy);
    out << buf;
  }
  if (!out) throw DataError(path + ": write failed");
}

NormStats NormStats::Fit(const std::vector<std::vector<double>>& rows) {
  NormStats stats;
  if (rows.empty()) return stats;
  const std::size_t d = rows.front().size();
  stats.mean.assign(d, 0.0);
  stats.std.assign(d, 0.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < d; ++j) stats.mean[j] += r[j];
  }
  for (double& m : stats.mean) m /= static_cast<double>(rows.size());
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = r[j] - stats.mean[j];
      stats.std[j] += diff * diff;
    }
  }
  for (double& s : stats.std) {
    s = std::sqrt(s / static_cast<double>(rows.size()));
    if (s < 1e-12) s = 1.0;
  }
  return stats;
}

std::vector<double> NormStats::Apply(std::span<const double> row) const {
  if (row.size() != mean.size()) {
    throw InvalidArgument("input has " + std::to_string(row.size()) +
                          " features, model expects " +
                          std::to_string(mean.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    out[j] = (row[j] - mean[j]) / std[j];
  }
  return out;
}

void MomentumStep(std::vector<double>& params, std::vector<double>& velocity,
                  const std::vector<double>& grad, double learning_rate,
                  double momentum) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    velocity[i] = momentum * velocity[i] - learning_rate * grad[i];
    params[i] += velocity[i];
  }
}

}  // namespace dfusion
