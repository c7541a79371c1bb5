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

#include <optional>
#include <string>
#include <vector>

#include "audio/matrix.hpp"
#include "core/dataset.hpp"

namespace dfusion {

// One row of the spectrogram index written by audio extraction:
// clip_id,path,label,rows,cols (label empty when unknown; path relative to
// the index file's directory unless absolute).
struct AudioIndexEntry {
  std::string clip_id;
  std::string path;
  std::optional<int> label;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

inline constexpr const char* kAudioIndexHeader = "clip_id,path,label,rows,cols";

void WriteAudioIndex(const std::vector<AudioIndexEntry>& entries,
                     const std::string& path);
// Paths in the result are resolved against the index file's directory.
std::vector<AudioIndexEntry> ReadAudioIndex(const std::string& path);

enum class AudioForm {
  kSpectrogram,  // rows x cols matrix per clip, time axis fitted to `cols`
  kBandMeans,    // mean dB per band, one value per row of the matrix
};

// Loads every indexed matrix. For kSpectrogram the time axis is
// center-cropped or padded with `pad_db` to `cols` columns and the dataset
// shape is set.
Dataset LoadAudioDataset(const std::vector<AudioIndexEntry>& entries,
                         AudioForm form, std::size_t cols = 128,
                         double pad_db = -80.0);

std::vector<double> BandMeans(const Matrix& m);

}  // namespace dfusion
