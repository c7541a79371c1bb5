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

#include <cmath>
#include <cstring>
#include <set>

#include "doctest.h"

#include "core/bundle_io.hpp"
#include "core/csv.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/image_io.hpp"
#include "core/log.hpp"
#include "core/rng.hpp"
#include "core/wav_io.hpp"
#include "support/fixtures.hpp"
#include "support/scratch.hpp"

using namespace dfusion;
using namespace dfusion::testing;

namespace {

ErrorKind KindOfThrow(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

std::string Le16(int v) {
  std::string s(2, '\0');
  s[0] = static_cast<char>(v & 0xff);
  s[1] = static_cast<char>((v >> 8) & 0xff);
  return s;
}
std::string Le32(std::uint32_t v) {
  std::string s(4, '\0');
  for (int i = 0; i < 4; ++i) s[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  return s;
}

std::string WavBytes(int channels, int rate, const std::vector<int>& pcm) {
  const std::uint32_t data = static_cast<std::uint32_t>(pcm.size() * 2);
  std::string s = "RIFF" + Le32(36 + data) + "WAVE";
  s += "fmt " + Le32(16) + Le16(1) + Le16(channels) + Le32(rate) +
       Le32(rate * channels * 2) + Le16(channels * 2) + Le16(16);
  s += "data" + Le32(data);
  for (int v : pcm) s += Le16(v & 0xffff);
  return s;
}

LandmarkBundle OneFrameBundle() {
  LandmarkBundle b;
  b.video_id = "one";
  b.fps = 30.0;
  b.frame_count = 1;
  b.frames.push_back(RenderFrame(Mat3::Identity(), Vec3(0, 0, kFaceDistance),
                                 false, 0));
  return b;
}

}  // namespace

TEST_CASE("rng streams are reproducible and forks ignore consumption") {
  SeededRng a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
  SeededRng c(99);
  const SeededRng fresh(99);
  for (int i = 0; i < 17; ++i) c.Uniform();
  SeededRng f1 = c.Fork(3), f2 = fresh.Fork(3), f3 = fresh.Fork(4);
  const auto x1 = f1.NextU64();
  CHECK(x1 == f2.NextU64());
  CHECK(x1 != f3.NextU64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.Uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(a.UniformIndex(7) < 7);
  }
}

TEST_CASE("pnm decode of tiny images") {
  ScratchDir dir("pnm");
  Spit(dir / "g.pgm", std::string("P5\n2 2\n255\n") + std::string("\x00\xff\xff\x00", 4));
  const auto any = ReadPnm(dir / "g.pgm");
  const auto& g = std::get<GrayImage>(any);
  CHECK(g.width == 2);
  CHECK(g.at(0, 0) == 0);
  CHECK(g.at(0, 1) == 255);
  CHECK(g.at(1, 0) == 255);
  CHECK(g.at(1, 1) == 0);

  Spit(dir / "w.ppm", std::string("P6\n1 1\n255\n\xff\xff\xff"));
  const RgbImage w = ReadRgb(dir / "w.ppm");
  CHECK(w.at(0, 0)[0] == 255);
  CHECK(w.at(0, 0)[1] == 255);
  CHECK(w.at(0, 0)[2] == 255);

  Spit(dir / "bad.ppm", "P3\n1 1\n255\n1 2 3\n");
  CHECK(KindOfThrow([&] { ReadPnm(dir / "bad.ppm"); }) == ErrorKind::kData);
  Spit(dir / "short.ppm", std::string("P6\n2 2\n255\n\x01\x02", 13));
  CHECK(KindOfThrow([&] { ReadPnm(dir / "short.ppm"); }) == ErrorKind::kData);
  Spit(dir / "max.pgm", std::string("P5\n1 1\n65535\n\x00\x00", 16));
  CHECK(KindOfThrow([&] { ReadPnm(dir / "max.pgm"); }) == ErrorKind::kData);

  RgbImage img{3, 2, {}};
  for (int i = 0; i < 18; ++i) img.pixels.push_back(static_cast<std::uint8_t>(i * 13));
  WritePpm(img, dir / "rt.ppm");
  CHECK(ReadRgb(dir / "rt.ppm").pixels == img.pixels);
}

TEST_CASE("wav decode scaling, stereo mixdown and duration") {
  ScratchDir dir("wav");
  Spit(dir / "m.wav", WavBytes(1, 16000, {16384, -32768, 0}));
  const AudioClip m = ReadWav(dir / "m.wav");
  CHECK(m.sample_rate == 16000);
  REQUIRE(m.samples.size() == 3);
  CHECK(m.samples[0] == 0.5);
  CHECK(m.samples[1] == -1.0);

  // L = 0.2, R = 0.4 as PCM-16.
  const int l = static_cast<int>(std::lround(0.2 * 32768));
  const int r = static_cast<int>(std::lround(0.4 * 32768));
  Spit(dir / "s.wav", WavBytes(2, 16000, {l, r}));
  const AudioClip s = ReadWav(dir / "s.wav");
  REQUIRE(s.samples.size() == 1);
  CHECK(s.samples[0] == doctest::Approx(0.3).epsilon(1e-4));

  const AudioClip clip = MakeVoiceClip(0, 2.0, 5);
  WriteWav(clip, dir / "v.wav");
  const AudioClip back = ReadWav(dir / "v.wav");
  CHECK(back.samples.size() == 32000);
  for (std::size_t i = 0; i < back.samples.size(); i += 97) {
    CHECK(std::abs(back.samples[i] - clip.samples[i]) <= 1.0 / 32768.0);
  }

  Spit(dir / "bad.wav", "RIFX0000WAVE");
  CHECK(KindOfThrow([&] { ReadWav(dir / "bad.wav"); }) == ErrorKind::kData);
  std::string eight = WavBytes(1, 8000, {0, 0});
  eight[34] = 8;  // bits per sample
  Spit(dir / "eight.wav", eight);
  CHECK(KindOfThrow([&] { ReadWav(dir / "eight.wav"); }) == ErrorKind::kData);
}

TEST_CASE("landmark bundles: schema identity, invariants, round trip") {
  ScratchDir dir("bundle");
  const LandmarkBundle one = OneFrameBundle();
  WriteLandmarkBundle(one, dir / "one.json");
  const LandmarkBundle back = ReadLandmarkBundle(dir / "one.json");
  CHECK(back.frame_count == 1);
  CHECK(back.frames.size() == 1);
  CHECK(back.video_id == "one");
  CHECK_FALSE(back.audio_ref.has_value());

  LandmarkBundle bad = OneFrameBundle();
  bad.frames[0].frame_index = 42;
  bad.frame_count = 43;
  bad.frames[0].points.pop_back();
  try {
    ValidateBundle(bad, false);
    FAIL("467 points accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kData);
    CHECK(std::string(e.what()).find("42") != std::string::npos);
  }

  LandmarkBundle out_of_range = OneFrameBundle();
  out_of_range.frames[0].points[5].x = 1.5;
  CHECK(KindOfThrow([&] { ValidateBundle(out_of_range, false); }) == ErrorKind::kData);

  LandmarkBundle dangling = OneFrameBundle();
  dangling.roi_refs.push_back({7, "x.ppm"});
  CHECK(KindOfThrow([&] { ValidateBundle(dangling, false); }) == ErrorKind::kData);

  CHECK(KindOfThrow([&] { ParseLandmarkBundle("{not json"); }) == ErrorKind::kData);
  CHECK(KindOfThrow([&] { ParseLandmarkBundle("[]"); }) == ErrorKind::kData);

  // 30-frame fixture: write, read, write again gives the same bytes.
  VideoSpec spec;
  spec.id = "thirty";
  WriteVideoFixture(spec, dir.str());
  const std::string first = Slurp(dir / "thirty.json");
  const LandmarkBundle read = ReadLandmarkBundle(dir / "thirty.json");
  CHECK(read.frames.size() == 30);
  WriteLandmarkBundle(read, dir / "again.json");
  CHECK(Slurp(dir / "again.json") == first);
  ValidateBundle(read, true);

  // ROI images carry their frame's roi_box size.
  for (const RoiRef& ref : read.roi_refs) {
    const PnmHeader h = ReadPnmHeader(read.Resolve(ref.path));
    const LandmarkFrame* f = read.FindFrame(ref.frame_index);
    REQUIRE(f != nullptr);
    CHECK(h.width == f->roi_box.width());
    CHECK(h.height == f->roi_box.height());
  }
}

TEST_CASE("feature csv round trip and schema errors") {
  ScratchDir dir("csv");
  std::vector<VideoFeatureVector> rows;
  SeededRng rng(3);
  for (int i = 0; i < 5; ++i) {
    VideoFeatureVector v;
    v.video_id = "v" + std::to_string(i);
    for (double& x : v.values) x = rng.Uniform(0.0, 1000.0) / 7.0;
    v.label = i % 2;
    rows.push_back(v);
  }
  rows[4].label.reset();
  WriteFeatureCsv(rows, dir / "f.csv");
  const auto back = ReadFeatureCsv(dir / "f.csv");
  REQUIRE(back.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(back[i].video_id == rows[i].video_id);
    CHECK(back[i].values == rows[i].values);
    CHECK(back[i].label == rows[i].label);
  }

  // No label column at all.
  std::string text = FeatureCsvHeader(false) + "\nx";
  for (int k = 0; k < 13; ++k) text += ",1";
  Spit(dir / "nolabel.csv", text + "\n");
  const auto unlabeled = ReadFeatureCsv(dir / "nolabel.csv");
  REQUIRE(unlabeled.size() == 1);
  CHECK_FALSE(unlabeled[0].label.has_value());

  // 12 feature columns.
  std::string header = "video_id";
  for (int k = 0; k < 12; ++k) header += "," + std::string(kVideoFeatureNames[k]);
  Spit(dir / "short.csv", header + ",label\nx,1,1,1,1,1,1,1,1,1,1,1,1,0\n");
  CHECK(KindOfThrow([&] { ReadFeatureCsv(dir / "short.csv"); }) == ErrorKind::kData);

  CHECK(SplitCsvLine("a,,b").size() == 3);
  CHECK(ParseLabelCell("1", "t") == 1);
  CHECK(KindOfThrow([&] { ParseLabelCell("2", "t"); }) == ErrorKind::kData);
  CHECK(KindOfThrow([&] { ParseDoubleCell("1.5x", "t"); }) == ErrorKind::kData);
  CHECK(KindOfThrow([&] { CheckCsvCell("a,b"); }) == ErrorKind::kInvalidArgument);
  const double third = 1.0 / 3.0;
  CHECK(ParseDoubleCell(FormatDouble(third), "t") == third);
}

TEST_CASE("dataset invariants") {
  Dataset ds;
  ds.Add("a", {1, 2}, 0);
  ds.Add("b", {3, 4}, 1);
  ValidateDataset(ds);
  CHECK(ds.ClassCounts() == std::array<std::size_t, 2>{1, 1});
  Dataset dup = ds;
  dup.Add("a", {5, 6}, 1);
  CHECK(KindOfThrow([&] { ValidateDataset(dup); }) == ErrorKind::kData);
  Dataset ragged = ds;
  ragged.rows[1].push_back(9);
  CHECK(KindOfThrow([&] { ValidateDataset(ragged); }) == ErrorKind::kData);
  Dataset shaped = ds;
  shaped.shape = {3, 1};
  CHECK(KindOfThrow([&] { ValidateDataset(shaped); }) == ErrorKind::kData);
}

TEST_CASE("log sink capture and reset") {
  std::vector<std::string> seen;
  SetLogSink([&](LogLevel, std::string_view m) { seen.emplace_back(m); });
  LogWarning("hello");
  SetLogSink({});
  CHECK(seen == std::vector<std::string>{"hello"});
}
