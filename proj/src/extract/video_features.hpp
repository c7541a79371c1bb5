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

#include <string>
#include <vector>

#include "core/types.hpp"
#include "geometry/face_metrics.hpp"
#include "geometry/pose.hpp"
#include "texture/glcm.hpp"

namespace dfusion {

struct VideoExtractOptions {
  // Every stride-th frame of the bundle is used. Bundles from the ingest
  // step are already sampled, hence the default of 1.
  int stride = 1;
  BlinkConfig blink;
  PnpOptions pnp;
  TextureConfig texture;
};

struct VideoExtraction {
  VideoFeatureVector features;
  int sampled_frames = 0;
  int roi_frames = 0;
  int pnp_failures = 0;
  int kite_failures = 0;
  int degenerate_blocks = 0;       // summed over ROI frames
  bool correlation_substituted = false;  // every block was degenerate
  std::vector<std::string> notes;  // human-readable per-video log
};

// Aggregation: mean over sampled frames for the distance features,
// population std-dev for head pose, raw count for blinks, mean over ROI
// frames for texture and colour. Throws DataError when fewer than 2 frames
// are sampled, no kite or fewer than 2 poses can be solved, or no ROI
// image belongs to a sampled frame.
VideoExtraction ExtractVideoFeatures(const LandmarkBundle& bundle,
                                     const VideoExtractOptions& options = {});

// ROI pixels for one frame: the image itself when it already has the
// roi_box size, else the roi_box crop of a full-frame image.
RgbImage LoadRoi(const LandmarkBundle& bundle, const LandmarkFrame& frame,
                 const std::string& ref);

}  // namespace dfusion
