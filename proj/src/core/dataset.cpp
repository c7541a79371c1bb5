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

#include "core/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace dfusion {

void Dataset::Add(std::string id, std::vector<double> row, int label) {
  ids.push_back(std::move(id));
  rows.push_back(std::move(row));
  labels.push_back(label);
}

std::array<std::size_t, 2> Dataset::ClassCounts() const {
  std::array<std::size_t, 2> counts{0, 0};
  for (int label : labels) {
    if (label == 0 || label == 1) ++counts[static_cast<std::size_t>(label)];
  }
  return counts;
}

bool Dataset::FullyLabeled() const {
  for (int label : labels) {
    if (label != 0 && label != 1) return false;
  }
  return true;
}

Dataset Dataset::EmptyLike() const {
  Dataset out;
  out.feature_names = feature_names;
  out.shape = shape;
  return out;
}

Dataset Dataset::Subset(std::span<const std::size_t> indices) const {
  Dataset out = EmptyLike();
  out.ids.reserve(indices.size());
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) out.Add(ids.at(i), rows.at(i), labels.at(i));
  return out;
}

void ValidateDataset(const Dataset& ds) {
  if (ds.ids.size() != ds.rows.size() || ds.labels.size() != ds.rows.size()) {
    throw DataError("dataset columns have inconsistent lengths");
  }
  std::unordered_set<std::string> seen;
  const std::size_t width = ds.dims();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.rows[i].size() != width) {
      throw DataError("row '" + ds.ids[i] + "' has " +
                      std::to_string(ds.rows[i].size()) + " values, expected " +
                      std::to_string(width));
    }
    if (!seen.insert(ds.ids[i]).second) {
      throw DataError("duplicate id '" + ds.ids[i] + "'");
    }
    const int label = ds.labels[i];
    if (label != 0 && label != 1 && label != kNoLabel) {
      throw DataError("row '" + ds.ids[i] + "' has an invalid label");
    }
  }
  if (ds.is_matrix() && !ds.empty() && ds.shape[0] * ds.shape[1] != width) {
    throw DataError("dataset shape does not match row width");
  }
}

Dataset ToDataset(const std::vector<VideoFeatureVector>& rows) {
  Dataset ds;
  ds.feature_names.assign(kVideoFeatureNames.begin(), kVideoFeatureNames.end());
  for (const VideoFeatureVector& r : rows) {
    ds.Add(r.video_id, std::vector<double>(r.values.begin(), r.values.end()),
           r.label.value_or(kNoLabel));
  }
  ValidateDataset(ds);
  return ds;
}

std::vector<VideoFeatureVector> ToFeatureRows(const Dataset& ds) {
  if (ds.dims() != kVideoFeatureCount && !ds.empty()) {
    throw DataError("dataset is not a video feature table");
  }
  std::vector<VideoFeatureVector> out(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out[i].video_id = ds.ids[i];
    std::copy(ds.rows[i].begin(), ds.rows[i].end(), out[i].values.begin());
    if (ds.labels[i] != kNoLabel) out[i].label = ds.labels[i];
  }
  return out;
}

std::string FeatureCsvHeader(bool with_label) {
  std::string header = "video_id";
  for (std::string_view name : kVideoFeatureNames) {
    header += ',';
    header += name;
  }
  if (with_label) header += ",label";
  return header;
}

void WriteFeatureCsv(const std::vector<VideoFeatureVector>& rows,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot write");
  out << FeatureCsvHeader(true) << "\n";
  char buf[32];
  for (const VideoFeatureVector& row : rows) {
    if (row.video_id.find_first_of(",\"\r\n") != std::string::npos) {
      throw InvalidArgument("video_id '" + row.video_id +
                            "' contains a CSV delimiter");
    }
    out << row.video_id;
    for (double v : row.values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << ',';
    if (row.label) out << *row.label;
    out << "\n";
  }
  if (!out) throw DataError(path + ": write failed");
}

std::vector<VideoFeatureVector> ReadFeatureCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  bool with_label = false;
  if (line == FeatureCsvHeader(true)) {
    with_label = true;
  } else if (line != FeatureCsvHeader(false)) {
    throw DataError(path + ": header does not match the feature table layout");
  }
  const std::size_t columns = 1 + kVideoFeatureCount + (with_label ? 1 : 0);

  std::vector<VideoFeatureVector> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != columns) {
      throw DataError(where + ": expected " + std::to_string(columns) +
                      " columns, found " + std::to_string(cells.size()));
    }
    VideoFeatureVector row;
    row.video_id = cells[0];
    for (std::size_t i = 0; i < kVideoFeatureCount; ++i) {
      row.values[i] = ParseDoubleCell(cells[i + 1], where);
    }
    if (with_label && !cells.back().empty()) {
      const std::string& l = cells.back();
      if (l != "0" && l != "1") {
        throw DataError(where + ": label must be 0, 1 or empty");
      }
      row.label = l == "1" ? 1 : 0;
    }
    try {
      Validate(row);
    } catch (const Error& e) {
      throw DataError(where + ": " + e.what());
    }
    rows.push_back(std::move(row));
  }
  ToDataset(rows);  // duplicate-id check
  return rows;
}

}  // namespace dfusion
