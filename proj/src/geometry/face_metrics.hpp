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

#include <span>

#include "core/types.hpp"
#include "geometry/landmarks.hpp"

namespace dfusion {

double Euclid(Point2 p, Point2 q);

// Pixel distance between nose landmarks 1 and 197.
double NoseSize(const LandmarkFrame& frame);
// Pixel distance between the mouth corners 61 and 291.
double LipSize(const LandmarkFrame& frame);
// Distance between the two pupil centers, each the midpoint of the eye's
// center-top and center-bottom landmarks.
double InterPupilDistance(const LandmarkFrame& frame);

enum class Eye { kLeft, kRight };

struct BlinkConfig {
  double threshold = 0.2;
  int min_closed_frames = 2;
  landmarks::EyeOutline left = landmarks::kLeftEye;
  landmarks::EyeOutline right = landmarks::kRightEye;
};

struct EyeState {
  double ear = 0.0;
  bool is_closed = false;
};

// Mean lid gap over the outline's lid pairs divided by the corner span.
// Throws NumericError when the corner span is below 1e-9 px.
EyeState EyeAspectRatio(const LandmarkFrame& frame, Eye eye,
                        const BlinkConfig& config = {});

// Mean of the two eyes' ratios for every frame of the bundle.
std::vector<double> EarTrace(const LandmarkBundle& bundle,
                             const BlinkConfig& config = {});

// Number of maximal runs with ear < threshold lasting at least
// min_closed_frames consecutive samples.
int CountBlinks(std::span<const double> ear_trace,
                const BlinkConfig& config = {});
int CountBlinks(const LandmarkBundle& bundle, const BlinkConfig& config = {});

}  // namespace dfusion
