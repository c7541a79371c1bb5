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
#include <optional>
#include <vector>

#include "core/types.hpp"

namespace dfusion {

// Quantized gray image; every level lies in [0, levels).
struct LevelImage {
  int width = 0;
  int height = 0;
  int levels = 0;
  std::vector<int> data;  // row-major

  int at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
};

// level = floor(pixel * levels / 256).
LevelImage QuantizeGray(const GrayImage& image, int levels);

// Pixel pair offset: the partner of (row, col) is (row + dy, col + dx).
struct Offset {
  int dx = 1;
  int dy = 0;
};

inline constexpr std::array<Offset, 4> kStandardOffsets = {
    Offset{1, 0}, Offset{1, 1}, Offset{0, 1}, Offset{-1, 1}};

struct Glcm {
  int levels = 0;
  Offset offset;
  bool symmetric = false;
  std::vector<double> p;  // levels x levels, row-major

  double at(int i, int j) const {
    return p[static_cast<std::size_t>(i) * levels + j];
  }
};

// Counts pairs (pixel, pixel + offset) that fall inside the image; the
// symmetric variant adds the transpose, the normalized variant divides by
// the total. Throws InvalidArgument when no pair fits in the image.
Glcm ComputeGlcm(const LevelImage& image, Offset offset, bool symmetric,
                 bool normalized);

// sum_ij P(i,j) (i - j)^2
double GlcmContrast(const Glcm& g);

// sum_ij (i - mu_i)(j - mu_j) P(i,j) / (sigma_i sigma_j). Empty when either
// marginal standard deviation is below 1e-12 (constant region).
std::optional<double> GlcmCorrelation(const Glcm& g);

struct TextureConfig {
  int gray_levels = 32;
};

struct BlockTexture {
  double contrast = 0.0;
  // Mean over blocks with a defined correlation; empty when all 9 blocks are
  // degenerate.
  std::optional<double> correlation;
  int degenerate_blocks = 0;
};

// Splits the ROI into a 3x3 grid (integer division, the last row/column of
// blocks absorbs the remainder). Each block averages contrast and
// correlation over kStandardOffsets; the result averages the 9 blocks.
// Throws InvalidArgument for ROIs smaller than 9x9.
BlockTexture BlockwiseTexture(const GrayImage& roi,
                              const TextureConfig& config = {});

}  // namespace dfusion
