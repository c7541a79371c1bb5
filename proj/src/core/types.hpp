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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dfusion {

inline constexpr std::size_t kMeshPointCount = 468;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Pixel rectangle, half-open: columns [x0, x1), rows [y0, y1).
struct RoiBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

// One face-mesh frame. Landmark x/y are fractions of the image size; z is
// the mesh's relative depth.
struct LandmarkFrame {
  int frame_index = 0;
  int image_width = 0;
  int image_height = 0;
  std::vector<Point3> points;
  RoiBox roi_box;

  // Landmark `index` converted to pixel units.
  Point2 Pixel(std::size_t index) const {
    const Point3& p = points.at(index);
    return {p.x * image_width, p.y * image_height};
  }
};

struct RoiRef {
  int frame_index = 0;
  std::string path;
};

struct LandmarkBundle {
  std::string video_id;
  double fps = 0.0;
  int frame_count = 0;
  std::vector<LandmarkFrame> frames;
  std::vector<RoiRef> roi_refs;
  std::optional<std::string> audio_ref;
  // Directory the bundle was read from; relative refs resolve against it.
  std::string base_dir;

  const LandmarkFrame* FindFrame(int frame_index) const;
  std::string Resolve(const std::string& ref) const;
};

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, interleaved R,G,B

  const std::uint8_t* at(int row, int col) const {
    return &pixels[(static_cast<std::size_t>(row) * width + col) * 3];
  }
};

struct AudioClip {
  int sample_rate = 0;
  std::vector<double> samples;  // mono, [-1, 1]
};

// Column order of the video feature table.
enum class VideoFeature : std::size_t {
  kCheekboneHeight = 0,
  kInterPupilDistance,
  kBlinkCount,
  kHeadposeX,
  kHeadposeY,
  kHeadposeZ,
  kNoseSize,
  kLipSize,
  kContrast,
  kCorrelation,
  kLuminance,
  kChrominance1,
  kChrominance2,
};

inline constexpr std::size_t kVideoFeatureCount = 13;

inline constexpr std::array<std::string_view, kVideoFeatureCount>
    kVideoFeatureNames = {
        "cheekbone_height", "inter_pupil_distance", "blink_count",
        "headpose_x",       "headpose_y",           "headpose_z",
        "nose_size",        "lip_size",             "contrast",
        "correlation",      "luminance",            "chrominance1",
        "chrominance2",
};

struct VideoFeatureVector {
  std::string video_id;
  std::array<double, kVideoFeatureCount> values{};
  std::optional<int> label;  // 0 = real, 1 = deepfake

  double& operator[](VideoFeature f) {
    return values[static_cast<std::size_t>(f)];
  }
  double operator[](VideoFeature f) const {
    return values[static_cast<std::size_t>(f)];
  }
};

// Throws DataError if a value is non-finite, blink_count < 0 or contrast < 0.
void Validate(const VideoFeatureVector& row);

enum class FourWayCategory {
  kRealReal = 0,
  kRealDeepfake = 1,
  kDeepfakeReal = 2,
  kDeepfakeDeepfake = 3,
};

// Video label first, audio label second; labels must be 0 or 1.
FourWayCategory CategoryFromLabels(int video_label, int audio_label);
int VideoLabelOf(FourWayCategory category);
int AudioLabelOf(FourWayCategory category);
std::string_view CategoryName(FourWayCategory category);

}  // namespace dfusion
