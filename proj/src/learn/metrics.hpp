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

#include <array>
#include <span>

namespace dfusion {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

// Binary report; class 1 (deepfake) is the positive class for the
// confusion counts. Ratios with a zero denominator are reported as 0 and
// set `undefined`.
struct Metrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  std::array<ClassMetrics, 2> per_class;
  ClassMetrics macro;
  ClassMetrics weighted;
  double accuracy = 0.0;
  bool undefined = false;

  std::size_t total() const { return tp + fp + tn + fn; }
};

// Throws InvalidArgument on empty input, length mismatch or labels outside
// {0, 1}.
Metrics ClassificationReport(std::span<const int> y_true,
                             std::span<const int> y_pred);

}  // namespace dfusion
