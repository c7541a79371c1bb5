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

#include "learn/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "core/error.hpp"

namespace dfusion {

double GiniImpurity(std::size_t positives, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(positives) / static_cast<double>(total);
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

int TreeModel::Depth() const {
  std::function<int(int)> depth = [&](int node) -> int {
    const TreeNode& n = nodes[static_cast<std::size_t>(node)];
    if (n.feature < 0) return 0;
    return 1 + std::max(depth(n.left), depth(n.right));
  };
  return nodes.empty() ? 0 : depth(0);
}

namespace {

struct Builder {
  const Dataset& data;
  const TreeConfig& config;
  SeededRng& rng;
  std::vector<TreeNode> nodes;
  std::vector<std::size_t> features;

  int Grow(std::vector<std::size_t>& rows, int depth) {
    std::size_t positives = 0;
    for (std::size_t r : rows) positives += data.labels[r] == 1 ? 1 : 0;
    const int id = static_cast<int>(nodes.size());
    TreeNode node;
    node.samples = rows.size();
    node.probability =
        static_cast<double>(positives) / static_cast<double>(rows.size());
    nodes.push_back(node);

    const bool pure = positives == 0 || positives == rows.size();
    if (pure || depth >= config.max_depth ||
        rows.size() < std::max<std::size_t>(2, config.min_samples_split)) {
      return id;
    }

    // Candidate features for this split.
    std::size_t n_candidates = features.size();
    if (config.max_features != 0 && config.max_features < features.size()) {
      n_candidates = config.max_features;
      for (std::size_t i = 0; i < n_candidates; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.UniformIndex(features.size() - i));
        std::swap(features[i], features[j]);
      }
    }

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_score = 0.0;
    std::vector<std::size_t> sorted = rows;
    for (std::size_t c = 0; c < n_candidates; ++c) {
      const std::size_t f = features[c];
      std::sort(sorted.begin(), sorted.end(),
                [&](std::size_t a, std::size_t b) {
                  const double va = data.rows[a][f];
                  const double vb = data.rows[b][f];
                  return va < vb || (va == vb && a < b);
                });
      std::size_t left_pos = 0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        left_pos += data.labels[sorted[i]] == 1 ? 1 : 0;
        const double v = data.rows[sorted[i]][f];
        const double next = data.rows[sorted[i + 1]][f];
        if (!(v < next)) continue;
        const std::size_t n_left = i + 1;
        const std::size_t n_right = sorted.size() - n_left;
        const double score =
            (static_cast<double>(n_left) * GiniImpurity(left_pos, n_left) +
             static_cast<double>(n_right) *
                 GiniImpurity(positives - left_pos, n_right)) /
            static_cast<double>(sorted.size());
        if (best_feature < 0 || score < best_score) {
          best_feature = static_cast<int>(f);
          best_score = score;
          best_threshold = v + (next - v) / 2.0;
          // Guard against the midpoint rounding onto the upper value.
          if (!(best_threshold < next)) best_threshold = v;
        }
      }
    }
    if (best_feature < 0) return id;  // every candidate is constant here

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      (data.rows[r][static_cast<std::size_t>(best_feature)] <= best_threshold
           ? left
           : right)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = Grow(left, depth + 1);
    const int r = Grow(right, depth + 1);
    TreeNode& n = nodes[static_cast<std::size_t>(id)];
    n.feature = best_feature;
    n.threshold = best_threshold;
    n.left = l;
    n.right = r;
    return id;
  }
};

void CheckTrainingSet(const Dataset& train, const char* what) {
  if (train.empty()) throw DataError(std::string(what) + ": empty training set");
  if (!train.FullyLabeled()) {
    throw DataError(std::string(what) + ": unlabeled training rows");
  }
  if (train.dims() == 0) throw DataError(std::string(what) + ": no features");
}

TreeModel TrainOnRows(const Dataset& train, std::vector<std::size_t> rows,
                      const TreeConfig& config, SeededRng& rng) {
  Builder b{train, config, rng, {}, {}};
  b.features.resize(train.dims());
  std::iota(b.features.begin(), b.features.end(), 0);
  b.Grow(rows, 0);
  TreeModel model;
  model.nodes = std::move(b.nodes);
  model.n_features = train.dims();
  model.config = config;
  model.seed = rng.seed();
  return model;
}

}  // namespace

TreeModel TrainTree(const Dataset& train, const TreeConfig& config,
                    SeededRng& rng) {
  CheckTrainingSet(train, "tree");
  if (config.max_depth < 0) throw InvalidArgument("tree: negative max_depth");
  std::vector<std::size_t> rows(train.size());
  std::iota(rows.begin(), rows.end(), 0);
  return TrainOnRows(train, std::move(rows), config, rng);
}

double TreeProbability(const TreeModel& tree, std::span<const double> x) {
  if (x.size() != tree.n_features) {
    throw InvalidArgument("tree input has " + std::to_string(x.size()) +
                          " values, expected " +
                          std::to_string(tree.n_features));
  }
  std::size_t node = 0;
  while (tree.nodes[node].feature >= 0) {
    const TreeNode& n = tree.nodes[node];
    node = static_cast<std::size_t>(
        x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                              : n.right);
  }
  return tree.nodes[node].probability;
}

int TreePredict(const TreeModel& tree, std::span<const double> x) {
  return TreeProbability(tree, x) >= 0.5 ? 1 : 0;
}

ForestModel TrainForest(const Dataset& train, const ForestConfig& config,
                        SeededRng& rng) {
  CheckTrainingSet(train, "forest");
  if (config.n_estimators == 0) {
    throw InvalidArgument("forest: n_estimators must be positive");
  }
  ForestModel forest;
  forest.config = config;
  forest.n_features = train.dims();
  forest.seed = rng.seed();
  TreeConfig tree_config = config.tree;
  if (tree_config.max_features == 0) {
    tree_config.max_features = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::floor(std::sqrt(static_cast<double>(train.dims())))));
  }
  for (std::size_t i = 0; i < config.n_estimators; ++i) {
    std::vector<std::size_t> rows(train.size());
    if (config.bootstrap) {
      SeededRng sampler = rng.Fork(i);
      for (std::size_t& r : rows) {
        r = static_cast<std::size_t>(sampler.UniformIndex(train.size()));
      }
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    SeededRng split_rng(rng.seed() + i);
    forest.trees.push_back(
        TrainOnRows(train, std::move(rows), tree_config, split_rng));
  }
  return forest;
}

double ForestVoteShare(const ForestModel& forest, std::span<const double> x) {
  if (forest.trees.empty()) throw InvalidArgument("forest has no trees");
  std::size_t votes = 0;
  for (const TreeModel& t : forest.trees) votes += TreePredict(t, x);
  return static_cast<double>(votes) / static_cast<double>(forest.trees.size());
}

int ForestPredict(const ForestModel& forest, std::span<const double> x) {
  return ForestVoteShare(forest, x) >= 0.5 ? 1 : 0;
}

}  // namespace dfusion
