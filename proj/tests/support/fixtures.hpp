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
#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "geometry/pose.hpp"

// Synthetic stand-ins for ingest-adapter output: face-mesh bundles with ROI
// images, and WAV clips.
namespace dfusion::testing {

inline constexpr int kImageWidth = 480;
inline constexpr int kImageHeight = 360;
inline constexpr double kFaceDistance = 2400.0;

// Eye opening (model units) used for open and closed lids.
inline constexpr double kOpenLid = 22.0;
inline constexpr double kClosedLid = 2.0;

// 468 model points in the head frame of CanonicalHeadModel(). The six pose
// landmarks coincide with the canonical model exactly.
std::array<Vec3, kMeshPointCount> FaceModel(double lid_half_height = kOpenLid);

LandmarkFrame RenderFrame(const Mat3& rotation, const Vec3& translation,
                          bool eyes_closed, int frame_index,
                          int width = kImageWidth, int height = kImageHeight);

struct VideoSpec {
  std::string id;
  int label = 0;
  int frames = 30;
  int source_stride = 5;  // frame_index step, as if sampled from a video
  double yaw_amp = 10.0;
  double pitch_amp = 6.0;
  double roll_amp = 3.0;
  std::vector<int> closed;  // frame positions with closed eyes
  double texture_amp = 25.0;
  bool constant_roi = false;
  int roi_every = 3;  // ROI image for every n-th frame
  std::uint64_t seed = 1;
};

// Writes <dir>/<id>.json and the ROI images under <dir>/<id>/. Returns the
// bundle as written (base_dir set to dir).
LandmarkBundle WriteVideoFixture(const VideoSpec& spec, const std::string& dir);

// Voice-like harmonic clip; deepfake clips carry an extra high band.
AudioClip MakeVoiceClip(int label, double seconds, std::uint64_t seed,
                        int sample_rate = 16000);

struct FixtureSet {
  std::string root;
  std::string bundles_dir;
  std::string wav_dir;
  std::string video_labels;  // id,label CSV
  std::string audio_labels;
  std::vector<std::string> video_ids;
  std::vector<int> video_label_values;
  std::vector<std::string> audio_ids;
  std::vector<int> audio_label_values;
};

FixtureSet WriteFixtureSet(const std::string& root, int n_videos = 5,
                           int n_audio = 5, std::uint64_t seed = 7);

}  // namespace dfusion::testing
