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

#include "extract/audio_features.hpp"

#include <filesystem>
#include <fstream>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "learn/cnn.hpp"

namespace dfusion {

void WriteAudioIndex(const std::vector<AudioIndexEntry>& entries,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << kAudioIndexHeader << '\n';
  for (const AudioIndexEntry& e : entries) {
    CheckCsvCell(e.clip_id);
    CheckCsvCell(e.path);
    out << e.clip_id << ',' << e.path << ',';
    if (e.label) out << *e.label;
    out << ',' << e.rows << ',' << e.cols << '\n';
  }
  if (!out) throw DataError("failed writing " + path);
}

std::vector<AudioIndexEntry> ReadAudioIndex(const std::string& path) {
  const CsvTable table = ReadCsv(path);
  if (table.header != SplitCsvLine(kAudioIndexHeader)) {
    throw DataError(path + ": header must be " + kAudioIndexHeader);
  }
  const std::filesystem::path base =
      std::filesystem::path(path).parent_path();
  std::vector<AudioIndexEntry> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = path + ":" + std::to_string(table.line_numbers[i]);
    AudioIndexEntry e;
    e.clip_id = row[0];
    const std::filesystem::path p(row[1]);
    e.path = p.is_absolute() ? p.string() : (base / p).string();
    if (!row[2].empty()) e.label = ParseLabelCell(row[2], where);
    e.rows = static_cast<std::size_t>(ParseIntCell(row[3], where));
    e.cols = static_cast<std::size_t>(ParseIntCell(row[4], where));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<double> BandMeans(const Matrix& m) {
  std::vector<double> out(m.rows, 0.0);
  if (m.cols == 0) return out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) sum += m(r, c);
    out[r] = sum / static_cast<double>(m.cols);
  }
  return out;
}

Dataset LoadAudioDataset(const std::vector<AudioIndexEntry>& entries,
                         AudioForm form, std::size_t cols, double pad_db) {
  Dataset ds;
  std::size_t bands = 0;
  for (const AudioIndexEntry& e : entries) {
    const Matrix m = ReadMatrix(e.path);
    if (m.rows != e.rows || m.cols != e.cols) {
      throw DataError(e.path + ": matrix is " + std::to_string(m.rows) + "x" +
                      std::to_string(m.cols) + ", index says " +
                      std::to_string(e.rows) + "x" + std::to_string(e.cols));
    }
    if (bands == 0) bands = m.rows;
    if (m.rows != bands) {
      throw DataError(e.path + ": band count differs from the other clips");
    }
    const int label = e.label ? *e.label : kNoLabel;
    if (form == AudioForm::kSpectrogram) {
      ds.Add(e.clip_id, FitColumns(m.data, m.rows, m.cols, cols, pad_db), label);
    } else {
      ds.Add(e.clip_id, BandMeans(m), label);
    }
  }
  if (form == AudioForm::kSpectrogram) {
    ds.shape = {bands, cols};
  } else {
    for (std::size_t b = 0; b < bands; ++b) {
      ds.feature_names.push_back("band" + std::to_string(b));
    }
  }
  ValidateDataset(ds);
  return ds;
}

}  // namespace dfusion
