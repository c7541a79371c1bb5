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

namespace dfusion {

struct TreeConfig {
  int max_depth = 8;
  std::size_t min_samples_split = 2;
  // Candidate features drawn per split; 0 means all features.
  std::size_t max_features = 0;
};

// Flat node array; node 0 is the root. Leaves have feature == -1.
// Rows with x[feature] <= threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double probability = 0.0;  // share of label 1 among training rows here
  std::size_t samples = 0;
};

struct TreeModel {
  std::vector<TreeNode> nodes;
  std::size_t n_features = 0;
  TreeConfig config;
  std::uint64_t seed = 0;

  int Depth() const;
};

struct ForestConfig {
  std::size_t n_estimators = 100;
  bool bootstrap = true;
  TreeConfig tree;  // tree.max_features 0 means floor(sqrt(d)) here
};

struct ForestModel {
  std::vector<TreeModel> trees;
  std::size_t n_features = 0;
  ForestConfig config;
  std::uint64_t seed = 0;
};

double GiniImpurity(std::size_t positives, std::size_t total);

// Greedy CART on Gini impurity. Split thresholds are midpoints between
// consecutive distinct feature values. Throws DataError on an empty or
// unlabeled training set.
TreeModel TrainTree(const Dataset& train, const TreeConfig& config,
                    SeededRng& rng);

double TreeProbability(const TreeModel& tree, std::span<const double> x);
int TreePredict(const TreeModel& tree, std::span<const double> x);

// Tree i bootstraps its rows from rng.Fork(i) and draws split features from
// SeededRng(seed + i), so a one-tree forest without bootstrap reproduces
// TrainTree under the same seed.
ForestModel TrainForest(const Dataset& train, const ForestConfig& config,
                        SeededRng& rng);

// Share of trees voting 1. The forest label is 1 when this is >= 0.5.
double ForestVoteShare(const ForestModel& forest, std::span<const double> x);
int ForestPredict(const ForestModel& forest, std::span<const double> x);

}  // namespace dfusion
