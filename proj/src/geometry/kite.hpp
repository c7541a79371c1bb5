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

#include "core/types.hpp"

namespace dfusion {

// Cheekbone-height construction on the kite formed by the left cheekbone L,
// right cheekbone R, mid-top of the nose MT and the chin C. Lengths are in
// pixels, angles in degrees.
//
//   cos R = (LR^2 + MTR^2 - MTC^2) / (2 LR MTR)
//   cos x = (MTR^2 + MTC^2 - RC^2) / (2 MTR MTC)
//   y     = 180 - (x + R)
//   h     = sin R * MTR / sin y
//   H     = MTC - h
//
// The first relation is evaluated exactly as written, with MTC opposite the
// angle, whether or not LR, MTR, MTC close a triangle in the image.
struct KiteMeasure {
  double lr = 0.0;
  double mtr = 0.0;
  double mtc = 0.0;
  double rc = 0.0;
  double angle_r = 0.0;
  double angle_x = 0.0;
  double angle_y = 0.0;
  double h = 0.0;
  double height = 0.0;  // H, the cheekbone height
};

// Throws NumericError when a cosine argument leaves [-1, 1] by more than
// 1e-9, a side is zero, or sin y < 1e-9.
KiteMeasure MeasureKite(Point2 left, Point2 right, Point2 mid_top,
                        Point2 chin);
KiteMeasure CheekboneHeight(const LandmarkFrame& frame);

}  // namespace dfusion
