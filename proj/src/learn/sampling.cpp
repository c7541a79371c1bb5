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

#include "learn/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/log.hpp"

namespace dfusion {

Split TrainTestSplit(const Dataset& ds, double ratio, SeededRng& rng) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidArgument("split ratio must be in (0, 1)");
  }
  if (ds.empty()) throw DataError("cannot split an empty dataset");
  if (!ds.FullyLabeled()) throw DataError("split needs labels on every row");

  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    by_class[static_cast<std::size_t>(ds.labels[i])].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2) {
      throw DataError("class " + std::to_string(c) +
                      " has fewer than 2 rows; cannot stratify");
    }
  }

  const auto target = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(ds.size())));
  std::array<std::size_t, 2> take{};
  std::array<double, 2> remainder{};
  for (int c = 0; c < 2; ++c) {
    const double exact = ratio * static_cast<double>(by_class[c].size());
    take[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
  }
  std::size_t assigned = take[0] + take[1];
  while (assigned < target) {
    const int c = remainder[1] > remainder[0] ? 1 : 0;
    ++take[c];
    remainder[c] = -1.0;
    ++assigned;
  }
  for (int c = 0; c < 2; ++c) {
    take[c] = std::clamp<std::size_t>(take[c], 1, by_class[c].size() - 1);
  }

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (int c = 0; c < 2; ++c) {
    rng.Shuffle(by_class[c]);
    train_idx.insert(train_idx.end(), by_class[c].begin(),
                     by_class[c].begin() + static_cast<long>(take[c]));
    test_idx.insert(test_idx.end(),
                    by_class[c].begin() + static_cast<long>(take[c]),
                    by_class[c].end());
  }
  rng.Shuffle(train_idx);
  rng.Shuffle(test_idx);
  return {ds.Subset(train_idx), ds.Subset(test_idx)};
}

namespace {

double SquaredDistance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

SmoteResult Smote(const Dataset& ds, int k, SeededRng& rng) {
  if (k < 1) throw InvalidArgument("SMOTE k must be >= 1");
  if (!ds.FullyLabeled()) throw DataError("SMOTE needs labels on every row");
  const auto counts = ds.ClassCounts();
  SmoteResult result;
  result.data = ds;
  if (counts[0] == counts[1]) return result;

  const int minority_label = counts[0] < counts[1] ? 0 : 1;
  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.labels[i] == minority_label) minority.push_back(i);
  }
  if (minority.size() < 2) {
    throw DataError("SMOTE needs at least 2 minority rows");
  }
  const std::size_t k_eff =
      std::min<std::size_t>(static_cast<std::size_t>(k), minority.size() - 1);
  const std::size_t needed =
      std::max(counts[0], counts[1]) - std::min(counts[0], counts[1]);

  // k nearest minority neighbours of every minority row; ties by index.
  std::vector<std::vector<std::size_t>> neighbors(minority.size());
  for (std::size_t a = 0; a < minority.size(); ++a) {
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t b = 0; b < minority.size(); ++b) {
      if (a == b) continue;
      dist.emplace_back(
          SquaredDistance(ds.rows[minority[a]], ds.rows[minority[b]]), b);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k_eff),
                      dist.end());
    for (std::size_t j = 0; j < k_eff; ++j) {
      neighbors[a].push_back(dist[j].second);
    }
  }

  result.degenerate = true;
  for (std::size_t m : minority) {
    if (ds.rows[m] != ds.rows[minority.front()]) result.degenerate = false;
  }
  if (result.degenerate) {
    LogWarning("SMOTE: all minority rows are identical; synthetic rows "
               "duplicate them");
  }

  std::vector<std::size_t> order(minority.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  for (std::size_t s = 0; s < needed; ++s) {
    const std::size_t a = order[s % order.size()];
    const std::size_t b = neighbors[a][rng.UniformIndex(k_eff)];
    const double gap = rng.Uniform();
    const std::vector<double>& x = ds.rows[minority[a]];
    const std::vector<double>& nn = ds.rows[minority[b]];
    std::vector<double> row(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
      row[d] = x[d] + gap * (nn[d] - x[d]);
    }
    result.data.Add(ds.ids[minority[a]] + "#smote" + std::to_string(s),
                    std::move(row), minority_label);
    result.origins.push_back({minority[a], minority[b], gap});
  }
  return result;
}

}  // namespace dfusion
