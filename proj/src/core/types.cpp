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

#include "core/types.hpp"

#include <cmath>
#include <filesystem>

#include "core/error.hpp"

namespace dfusion {

const LandmarkFrame* LandmarkBundle::FindFrame(int frame_index) const {
  for (const LandmarkFrame& f : frames) {
    if (f.frame_index == frame_index) return &f;
  }
  return nullptr;
}

std::string LandmarkBundle::Resolve(const std::string& ref) const {
  std::filesystem::path p(ref);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (std::filesystem::path(base_dir) / p).string();
}

void Validate(const VideoFeatureVector& row) {
  for (std::size_t i = 0; i < kVideoFeatureCount; ++i) {
    if (!std::isfinite(row.values[i])) {
      throw DataError("video '" + row.video_id + "': feature " +
                      std::string(kVideoFeatureNames[i]) + " is not finite");
    }
  }
  if (row[VideoFeature::kBlinkCount] < 0) {
    throw DataError("video '" + row.video_id + "': negative blink_count");
  }
  if (row[VideoFeature::kContrast] < 0) {
    throw DataError("video '" + row.video_id + "': negative contrast");
  }
  if (row.label && *row.label != 0 && *row.label != 1) {
    throw DataError("video '" + row.video_id + "': label must be 0 or 1");
  }
}

FourWayCategory CategoryFromLabels(int video_label, int audio_label) {
  if ((video_label != 0 && video_label != 1) ||
      (audio_label != 0 && audio_label != 1)) {
    throw InvalidArgument("labels must be 0 or 1");
  }
  return static_cast<FourWayCategory>(video_label * 2 + audio_label);
}

int VideoLabelOf(FourWayCategory category) {
  return static_cast<int>(category) / 2;
}

int AudioLabelOf(FourWayCategory category) {
  return static_cast<int>(category) % 2;
}

std::string_view CategoryName(FourWayCategory category) {
  switch (category) {
    case FourWayCategory::kRealReal:
      return "real-real";
    case FourWayCategory::kRealDeepfake:
      return "real-deepfake";
    case FourWayCategory::kDeepfakeReal:
      return "deepfake-real";
    case FourWayCategory::kDeepfakeDeepfake:
      return "deepfake-deepfake";
  }
  return "unknown";
}

}  // namespace dfusion
