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

#include <cstddef>
#include <string>
#include <vector>

namespace dfusion {

// Dense row-major real matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
};

// DFSMATRX layout, little-endian:
//   bytes 0-7   magic "DFSMATRX"
//   byte  8     format version (1)
//   bytes 9-12  u32 rows
//   bytes 13-16 u32 cols
//   then rows*cols IEEE-754 binary32 values, row-major.
inline constexpr std::size_t kMatrixHeaderBytes = 17;

// Values are stored as 32-bit floats. Throws InvalidArgument on non-finite
// entries.
void WriteMatrix(const Matrix& m, const std::string& path);
// Throws DataError on bad magic, unknown version or truncated payload.
Matrix ReadMatrix(const std::string& path);

// 8-bit PGM for inspection: floor_db maps to 0 and 0 dB to 255, linearly.
// Row 0 of the matrix (lowest band) becomes the bottom image row.
void RenderPgm(const Matrix& db, double floor_db, const std::string& path);

}  // namespace dfusion
