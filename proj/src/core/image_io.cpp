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

#include "core/image_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>

#include "core/error.hpp"

namespace dfusion {
namespace {

void SkipSpaceAndComments(std::istream& in) {
  while (true) {
    int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int ReadHeaderInt(std::istream& in, const std::string& path) {
  SkipSpaceAndComments(in);
  int value = -1;
  if (!(in >> value) || value < 0) {
    throw DataError(path + ": malformed PNM header");
  }
  return value;
}

PnmHeader ParseHeader(std::istream& in, const std::string& path) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6')) {
    throw DataError(path + ": bad magic, expected binary P5 or P6");
  }
  PnmHeader header;
  header.color = magic[1] == '6';
  header.width = ReadHeaderInt(in, path);
  header.height = ReadHeaderInt(in, path);
  const int maxval = ReadHeaderInt(in, path);
  if (maxval != 255) {
    throw DataError(path + ": maxval " + std::to_string(maxval) +
                    " unsupported, expected 255");
  }
  if (header.width == 0 || header.height == 0) {
    throw DataError(path + ": empty image");
  }
  // Exactly one whitespace byte separates header and payload.
  if (!std::isspace(in.get())) {
    throw DataError(path + ": malformed PNM header");
  }
  return header;
}

std::ifstream Open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open");
  return in;
}

}  // namespace

PnmHeader ReadPnmHeader(const std::string& path) {
  std::ifstream in = Open(path);
  return ParseHeader(in, path);
}

AnyImage ReadPnm(const std::string& path) {
  std::ifstream in = Open(path);
  const PnmHeader header = ParseHeader(in, path);
  const std::size_t channels = header.color ? 3 : 1;
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(header.width) *
                                   header.height * channels);
  in.read(reinterpret_cast<char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
    throw DataError(path + ": truncated payload");
  }
  if (header.color) {
    return RgbImage{header.width, header.height, std::move(pixels)};
  }
  return GrayImage{header.width, header.height, std::move(pixels)};
}

RgbImage ReadRgb(const std::string& path) {
  AnyImage image = ReadPnm(path);
  if (auto* rgb = std::get_if<RgbImage>(&image)) return std::move(*rgb);
  const GrayImage& gray = std::get<GrayImage>(image);
  RgbImage out{gray.width, gray.height, {}};
  out.pixels.reserve(gray.pixels.size() * 3);
  for (std::uint8_t v : gray.pixels) {
    out.pixels.insert(out.pixels.end(), {v, v, v});
  }
  return out;
}

namespace {

void WritePnm(const char* magic, int width, int height,
              const std::vector<std::uint8_t>& pixels, std::size_t channels,
              const std::string& path) {
  if (pixels.size() != static_cast<std::size_t>(width) * height * channels) {
    throw InvalidArgument(path + ": pixel buffer does not match dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot write");
  out << magic << "\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace

void WritePgm(const GrayImage& image, const std::string& path) {
  WritePnm("P5", image.width, image.height, image.pixels, 1, path);
}

void WritePpm(const RgbImage& image, const std::string& path) {
  WritePnm("P6", image.width, image.height, image.pixels, 3, path);
}

}  // namespace dfusion
