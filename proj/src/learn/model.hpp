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

#include <string>
#include <variant>
#include <vector>

#include "core/dataset.hpp"
#include "core/rng.hpp"
#include "learn/ann.hpp"
#include "learn/cnn.hpp"
#include "learn/tree.hpp"

namespace dfusion {

enum class ModelKind { kAnn, kCnn, kTree, kForest };

using Model = std::variant<AnnModel, CnnModel, TreeModel, ForestModel>;

std::string KindName(ModelKind kind);
// Accepts "ann", "cnn", "tree", "forest"; throws InvalidArgument otherwise.
ModelKind ParseKind(const std::string& name);
ModelKind KindOf(const Model& model);

// Row width the model expects.
std::size_t InputDims(const Model& model);
// Empty for tree and forest models.
const TrainingHistory& HistoryOf(const Model& model);

struct TrainOptions {
  AnnConfig ann;
  CnnConfig cnn;
  TreeConfig tree;
  ForestConfig forest;
};

Model TrainModel(ModelKind kind, const Dataset& train,
                 const TrainOptions& options, SeededRng& rng);

// Probability of label 1 per row (vote share for forests).
std::vector<double> PredictProba(const Model& model, const Dataset& data);
std::vector<int> PredictLabels(const Model& model, const Dataset& data);

// JSON model document. Loading checks every dimension against the stored
// weights and throws DataError on any inconsistency.
std::string SerializeModel(const Model& model);
Model ParseModel(const std::string& text);
void SaveModel(const Model& model, const std::string& path);
Model LoadModel(const std::string& path);

struct FeatureImportance {
  std::size_t index = 0;
  std::string name;
  double mean_drop = 0.0;  // baseline accuracy minus permuted accuracy
  double std_drop = 0.0;
};

// Accuracy drop when one column is shuffled, averaged over `repeats`
// shuffles, sorted by mean drop (descending, ties by column index).
// Tabular models only.
std::vector<FeatureImportance> PermutationImportance(const Model& model,
                                                     const Dataset& test,
                                                     int repeats,
                                                     SeededRng& rng);

}  // namespace dfusion
