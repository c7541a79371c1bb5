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

#include <utility>
#include <vector>

#include "core/dataset.hpp"
#include "core/rng.hpp"

namespace dfusion {

struct Split {
  Dataset train;
  Dataset test;
};

// Stratified shuffle split. The training share of each class is allotted by
// largest remainder so |train| = round(ratio * n), with at least one row of
// every class on each side. Throws DataError when a class has fewer than 2
// rows or a row is unlabeled.
Split TrainTestSplit(const Dataset& ds, double ratio, SeededRng& rng);

// Synthetic row bookkeeping: the row lies on the segment base -> neighbor at
// parameter `gap`.
struct SmoteOrigin {
  std::size_t base = 0;      // index into the input dataset
  std::size_t neighbor = 0;  // index into the input dataset
  double gap = 0.0;
};

struct SmoteResult {
  Dataset data;  // input rows first, then synthetic minority rows
  std::vector<SmoteOrigin> origins;  // one per synthetic row
  bool degenerate = false;  // minority rows are all identical
};

// Oversamples the minority class to the majority count. Each synthetic row
// is x + u (x_nn - x) with u uniform in [0, 1) and x_nn drawn from the k
// nearest minority neighbours of x (Euclidean); base rows cycle through a
// shuffled minority order. k is reduced to (minority size - 1) when the
// minority class is smaller than k + 1.
SmoteResult Smote(const Dataset& ds, int k, SeededRng& rng);

}  // namespace dfusion
