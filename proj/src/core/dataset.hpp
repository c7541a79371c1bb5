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
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace dfusion {

inline constexpr int kNoLabel = -1;

// Numeric sample table shared by every learner. Rows are feature vectors;
// when `shape` is set each row is a row-major (shape[0] x shape[1]) matrix.
struct Dataset {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;  // 0, 1 or kNoLabel
  std::vector<std::string> feature_names;
  std::array<std::size_t, 2> shape{0, 0};

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  std::size_t dims() const { return rows.empty() ? 0 : rows.front().size(); }
  bool is_matrix() const { return shape[0] != 0; }

  void Add(std::string id, std::vector<double> row, int label);

  // Counts of label 0 and label 1.
  std::array<std::size_t, 2> ClassCounts() const;
  bool FullyLabeled() const;

  // Empty dataset carrying this one's column metadata.
  Dataset EmptyLike() const;
  Dataset Subset(std::span<const std::size_t> indices) const;
};

// Throws DataError on ragged rows, duplicate ids, labels outside
// {0, 1, kNoLabel} or a shape that disagrees with the row width.
void ValidateDataset(const Dataset& ds);

Dataset ToDataset(const std::vector<VideoFeatureVector>& rows);
std::vector<VideoFeatureVector> ToFeatureRows(const Dataset& ds);

// Fixed header:
// video_id,<13 feature names>,label
// Values are written with 17 significant digits; an empty label cell means
// the label is absent.
void WriteFeatureCsv(const std::vector<VideoFeatureVector>& rows,
                     const std::string& path);
std::vector<VideoFeatureVector> ReadFeatureCsv(const std::string& path);
std::string FeatureCsvHeader(bool with_label);

}  // namespace dfusion
