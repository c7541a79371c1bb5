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

struct OrgbPixel {
  double l = 0.0;   // luminance
  double c1 = 0.0;  // red-green chrominance
  double c2 = 0.0;  // blue-yellow chrominance
};

//   [L ]   [0.299  0.587  0.114] [R]
//   [C1] = [0.500  0.500 -1.000] [G]
//   [C2]   [0.866 -0.866  0.000] [B]
OrgbPixel RgbToOrgb(double r, double g, double b);

// Per-channel mean of RgbToOrgb over every pixel. Throws InvalidArgument for
// an empty image.
OrgbPixel SkinToneFeatures(const RgbImage& roi);

// 8-bit gray image from the luminance row, rounded and clamped.
GrayImage LuminanceImage(const RgbImage& image);

}  // namespace dfusion
