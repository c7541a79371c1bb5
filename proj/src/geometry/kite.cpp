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

#include "geometry/kite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "geometry/face_metrics.hpp"
#include "geometry/landmarks.hpp"

namespace dfusion {
namespace {

constexpr double kCosineSlack = 1e-9;
constexpr double kMinSine = 1e-9;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double AngleFromCosine(double cosine, const char* name) {
  if (!std::isfinite(cosine) || cosine < -1.0 - kCosineSlack ||
      cosine > 1.0 + kCosineSlack) {
    throw NumericError(std::string("kite: cos ") + name +
                       " outside [-1, 1], degenerate geometry");
  }
  return std::acos(std::clamp(cosine, -1.0, 1.0)) * kRadToDeg;
}

}  // namespace

KiteMeasure MeasureKite(Point2 left, Point2 right, Point2 mid_top,
                        Point2 chin) {
  KiteMeasure k;
  k.lr = Euclid(left, right);
  k.mtr = Euclid(mid_top, right);
  k.mtc = Euclid(mid_top, chin);
  k.rc = Euclid(right, chin);
  if (k.lr <= 0.0 || k.mtr <= 0.0 || k.mtc <= 0.0 || k.rc <= 0.0) {
    throw NumericError("kite: coincident landmarks");
  }

  k.angle_r = AngleFromCosine(
      (k.lr * k.lr + k.mtr * k.mtr - k.mtc * k.mtc) / (2.0 * k.lr * k.mtr),
      "R");
  k.angle_x = AngleFromCosine(
      (k.mtr * k.mtr + k.mtc * k.mtc - k.rc * k.rc) / (2.0 * k.mtr * k.mtc),
      "x");
  k.angle_y = 180.0 - (k.angle_x + k.angle_r);

  const double sin_y = std::sin(k.angle_y / kRadToDeg);
  if (sin_y < kMinSine) {
    throw NumericError("kite: sin y below threshold, h undefined");
  }
  k.h = std::sin(k.angle_r / kRadToDeg) * k.mtr / sin_y;
  k.height = k.mtc - k.h;
  return k;
}

KiteMeasure CheekboneHeight(const LandmarkFrame& frame) {
  return MeasureKite(frame.Pixel(landmarks::kCheekLeft),
                     frame.Pixel(landmarks::kCheekRight),
                     frame.Pixel(landmarks::kMidTop),
                     frame.Pixel(landmarks::kChin));
}

}  // namespace dfusion
