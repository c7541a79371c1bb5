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

#include "texture/orgb.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace dfusion {

OrgbPixel RgbToOrgb(double r, double g, double b) {
  return {0.299 * r + 0.587 * g + 0.114 * b, 0.5 * r + 0.5 * g - 1.0 * b,
          0.866 * r - 0.866 * g};
}

OrgbPixel SkinToneFeatures(const RgbImage& roi) {
  const std::size_t n = static_cast<std::size_t>(roi.width) * roi.height;
  if (n == 0 || roi.pixels.size() != n * 3) {
    throw InvalidArgument("skin tone needs a non-empty RGB ROI");
  }
  OrgbPixel sum;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* px = &roi.pixels[i * 3];
    const OrgbPixel o = RgbToOrgb(px[0], px[1], px[2]);
    sum.l += o.l;
    sum.c1 += o.c1;
    sum.c2 += o.c2;
  }
  const double count = static_cast<double>(n);
  return {sum.l / count, sum.c1 / count, sum.c2 / count};
}

GrayImage LuminanceImage(const RgbImage& image) {
  GrayImage gray{image.width, image.height, {}};
  const std::size_t n = static_cast<std::size_t>(image.width) * image.height;
  gray.pixels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* px = &image.pixels[i * 3];
    const double l = RgbToOrgb(px[0], px[1], px[2]).l;
    gray.pixels.push_back(
        static_cast<std::uint8_t>(std::clamp(std::lround(l), 0L, 255L)));
  }
  return gray;
}

}  // namespace dfusion
