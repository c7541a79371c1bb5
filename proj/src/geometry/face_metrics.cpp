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

#include "geometry/face_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace dfusion {
namespace {

Point2 Midpoint(Point2 a, Point2 b) {
  return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
}

}  // namespace

double Euclid(Point2 p, Point2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

double NoseSize(const LandmarkFrame& frame) {
  return Euclid(frame.Pixel(landmarks::kNoseBase),
                frame.Pixel(landmarks::kNoseBridge));
}

double LipSize(const LandmarkFrame& frame) {
  return Euclid(frame.Pixel(landmarks::kMouthLeft),
                frame.Pixel(landmarks::kMouthRight));
}

double InterPupilDistance(const LandmarkFrame& frame) {
  const Point2 left = Midpoint(frame.Pixel(landmarks::kLeftEyeTop),
                               frame.Pixel(landmarks::kLeftEyeBottom));
  const Point2 right = Midpoint(frame.Pixel(landmarks::kRightEyeTop),
                                frame.Pixel(landmarks::kRightEyeBottom));
  return Euclid(left, right);
}

EyeState EyeAspectRatio(const LandmarkFrame& frame, Eye eye,
                        const BlinkConfig& config) {
  const landmarks::EyeOutline& outline =
      eye == Eye::kLeft ? config.left : config.right;
  const double span =
      Euclid(frame.Pixel(outline.corner_a), frame.Pixel(outline.corner_b));
  if (span < 1e-9) {
    throw NumericError("frame " + std::to_string(frame.frame_index) +
                       ": degenerate eye corners");
  }
  double gap = 0.0;
  for (const landmarks::LidPair& pair : outline.lids) {
    gap += Euclid(frame.Pixel(pair.upper), frame.Pixel(pair.lower));
  }
  gap /= static_cast<double>(outline.lids.size());
  EyeState state;
  state.ear = gap / span;
  state.is_closed = state.ear < config.threshold;
  return state;
}

std::vector<double> EarTrace(const LandmarkBundle& bundle,
                             const BlinkConfig& config) {
  std::vector<double> trace;
  trace.reserve(bundle.frames.size());
  for (const LandmarkFrame& frame : bundle.frames) {
    const double left = EyeAspectRatio(frame, Eye::kLeft, config).ear;
    const double right = EyeAspectRatio(frame, Eye::kRight, config).ear;
    trace.push_back((left + right) / 2.0);
  }
  return trace;
}

int CountBlinks(std::span<const double> ear_trace, const BlinkConfig& config) {
  int blinks = 0;
  int run = 0;
  for (double ear : ear_trace) {
    if (ear < config.threshold) {
      if (++run == std::max(1, config.min_closed_frames)) ++blinks;
    } else {
      run = 0;
    }
  }
  return blinks;
}

int CountBlinks(const LandmarkBundle& bundle, const BlinkConfig& config) {
  if (bundle.frames.size() < 2) {
    throw InvalidArgument("blink counting needs at least 2 frames");
  }
  const std::vector<double> trace = EarTrace(bundle, config);
  return CountBlinks(trace, config);
}

}  // namespace dfusion
