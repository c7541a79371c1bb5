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
#include <variant>

#include "core/types.hpp"

namespace dfusion {

using AnyImage = std::variant<GrayImage, RgbImage>;

struct PnmHeader {
  bool color = false;  // P6 when true, P5 otherwise
  int width = 0;
  int height = 0;
};

// Binary PGM (P5) or PPM (P6), maxval 255. Throws DataError on bad magic,
// maxval other than 255 or a truncated payload.
AnyImage ReadPnm(const std::string& path);
PnmHeader ReadPnmHeader(const std::string& path);

// Reads either flavour and converts to RGB (gray replicated to 3 channels).
RgbImage ReadRgb(const std::string& path);

void WritePgm(const GrayImage& image, const std::string& path);
void WritePpm(const RgbImage& image, const std::string& path);

}  // namespace dfusion
