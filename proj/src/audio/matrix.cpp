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

#include "audio/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "core/error.hpp"
#include "core/image_io.hpp"

namespace dfusion {
namespace {

constexpr char kMagic[8] = {'D', 'F', 'S', 'M', 'A', 'T', 'R', 'X'};
constexpr std::uint8_t kVersion = 1;

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }
}

std::uint32_t GetU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void WriteMatrix(const Matrix& m, const std::string& path) {
  if (m.data.size() != m.rows * m.cols) {
    throw InvalidArgument("matrix storage does not match its shape");
  }
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  PutU32(out, static_cast<std::uint32_t>(m.rows));
  PutU32(out, static_cast<std::uint32_t>(m.cols));
  out.reserve(out.size() + m.data.size() * 4);
  for (double v : m.data) {
    if (!std::isfinite(v)) throw InvalidArgument("matrix has non-finite entry");
    PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError(path + ": cannot write");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw DataError(path + ": write failed");
}

Matrix ReadMatrix(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DataError(path + ": cannot open");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < kMatrixHeaderBytes ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw DataError(path + ": bad magic, not a DFSMATRX file");
  }
  if (bytes[8] != kVersion) {
    throw DataError(path + ": unsupported DFSMATRX version " +
                    std::to_string(bytes[8]));
  }
  Matrix m;
  m.rows = GetU32(bytes.data() + 9);
  m.cols = GetU32(bytes.data() + 13);
  const std::size_t count = m.rows * m.cols;
  if (bytes.size() - kMatrixHeaderBytes < count * 4) {
    throw DataError(path + ": truncated payload");
  }
  m.data.resize(count);
  const std::uint8_t* p = bytes.data() + kMatrixHeaderBytes;
  for (std::size_t i = 0; i < count; ++i) {
    m.data[i] = std::bit_cast<float>(GetU32(p + 4 * i));
  }
  return m;
}

void RenderPgm(const Matrix& db, double floor_db, const std::string& path) {
  if (!(floor_db < 0.0)) throw InvalidArgument("floor_db must be negative");
  GrayImage image{static_cast<int>(db.cols), static_cast<int>(db.rows), {}};
  image.pixels.resize(db.rows * db.cols);
  for (std::size_t r = 0; r < db.rows; ++r) {
    const std::size_t out_row = db.rows - 1 - r;
    for (std::size_t c = 0; c < db.cols; ++c) {
      const double t = (db(r, c) - floor_db) / (0.0 - floor_db);
      image.pixels[out_row * db.cols + c] = static_cast<std::uint8_t>(
          std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
    }
  }
  WritePgm(image, path);
}

}  // namespace dfusion
