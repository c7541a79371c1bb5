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

#include "texture/glcm.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace dfusion {

LevelImage QuantizeGray(const GrayImage& image, int levels) {
  if (levels < 2 || levels > 256) {
    throw InvalidArgument("gray levels must be in [2, 256]");
  }
  LevelImage out{image.width, image.height, levels, {}};
  out.data.reserve(image.pixels.size());
  for (std::uint8_t v : image.pixels) out.data.push_back(v * levels / 256);
  return out;
}

Glcm ComputeGlcm(const LevelImage& image, Offset offset, bool symmetric,
                 bool normalized) {
  Glcm g;
  g.levels = image.levels;
  g.offset = offset;
  g.symmetric = symmetric;
  g.p.assign(static_cast<std::size_t>(image.levels) * image.levels, 0.0);
  const auto n = static_cast<std::size_t>(image.levels);

  const int row_begin = std::max(0, -offset.dy);
  const int row_end = std::min(image.height, image.height - offset.dy);
  const int col_begin = std::max(0, -offset.dx);
  const int col_end = std::min(image.width, image.width - offset.dx);
  double total = 0.0;
  for (int r = row_begin; r < row_end; ++r) {
    for (int c = col_begin; c < col_end; ++c) {
      const auto i = static_cast<std::size_t>(image.at(r, c));
      const auto j = static_cast<std::size_t>(
          image.at(r + offset.dy, c + offset.dx));
      g.p[i * n + j] += 1.0;
      if (symmetric) g.p[j * n + i] += 1.0;
      total += symmetric ? 2.0 : 1.0;
    }
  }
  if (total == 0.0) {
    throw InvalidArgument("image too small for the GLCM offset");
  }
  if (normalized) {
    for (double& v : g.p) v /= total;
  }
  return g;
}

double GlcmContrast(const Glcm& g) {
  double sum = 0.0;
  for (int i = 0; i < g.levels; ++i) {
    for (int j = 0; j < g.levels; ++j) {
      const double d = i - j;
      sum += g.at(i, j) * d * d;
    }
  }
  return sum;
}

std::optional<double> GlcmCorrelation(const Glcm& g) {
  double mass = 0.0;
  double mu_i = 0.0;
  double mu_j = 0.0;
  for (int i = 0; i < g.levels; ++i) {
    for (int j = 0; j < g.levels; ++j) {
      mass += g.at(i, j);
      mu_i += i * g.at(i, j);
      mu_j += j * g.at(i, j);
    }
  }
  if (mass <= 0.0) return std::nullopt;
  // Unnormalized counts are treated as the equivalent distribution.
  mu_i /= mass;
  mu_j /= mass;
  double var_i = 0.0;
  double var_j = 0.0;
  double cov = 0.0;
  for (int i = 0; i < g.levels; ++i) {
    for (int j = 0; j < g.levels; ++j) {
      const double p = g.at(i, j) / mass;
      var_i += p * (i - mu_i) * (i - mu_i);
      var_j += p * (j - mu_j) * (j - mu_j);
      cov += p * (i - mu_i) * (j - mu_j);
    }
  }
  const double sigma_i = std::sqrt(var_i);
  const double sigma_j = std::sqrt(var_j);
  if (sigma_i < 1e-12 || sigma_j < 1e-12) return std::nullopt;
  return std::clamp(cov / (sigma_i * sigma_j), -1.0, 1.0);
}

namespace {

LevelImage Crop(const LevelImage& image, int row0, int col0, int rows,
                int cols) {
  LevelImage out{cols, rows, image.levels, {}};
  out.data.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out.data.push_back(image.at(row0 + r, col0 + c));
  }
  return out;
}

}  // namespace

BlockTexture BlockwiseTexture(const GrayImage& roi,
                              const TextureConfig& config) {
  if (roi.width < 9 || roi.height < 9) {
    throw InvalidArgument("ROI must be at least 9x9 pixels");
  }
  const LevelImage levels = QuantizeGray(roi, config.gray_levels);
  const int block_w = roi.width / 3;
  const int block_h = roi.height / 3;

  BlockTexture out;
  double contrast_sum = 0.0;
  double correlation_sum = 0.0;
  int correlation_blocks = 0;
  for (int br = 0; br < 3; ++br) {
    for (int bc = 0; bc < 3; ++bc) {
      const int rows = br == 2 ? roi.height - 2 * block_h : block_h;
      const int cols = bc == 2 ? roi.width - 2 * block_w : block_w;
      const LevelImage block =
          Crop(levels, br * block_h, bc * block_w, rows, cols);
      double block_contrast = 0.0;
      double block_correlation = 0.0;
      int defined = 0;
      for (const Offset& offset : kStandardOffsets) {
        const Glcm g = ComputeGlcm(block, offset, true, true);
        block_contrast += GlcmContrast(g);
        if (auto corr = GlcmCorrelation(g)) {
          block_correlation += *corr;
          ++defined;
        }
      }
      contrast_sum += block_contrast / kStandardOffsets.size();
      if (defined > 0) {
        correlation_sum += block_correlation / defined;
        ++correlation_blocks;
      } else {
        ++out.degenerate_blocks;
      }
    }
  }
  out.contrast = contrast_sum / 9.0;
  if (correlation_blocks > 0) {
    out.correlation = correlation_sum / correlation_blocks;
  }
  return out;
}

}  // namespace dfusion
