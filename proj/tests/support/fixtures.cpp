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

#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "core/bundle_io.hpp"
#include "core/image_io.hpp"
#include "core/rng.hpp"
#include "core/wav_io.hpp"
#include "geometry/landmarks.hpp"

namespace dfusion::testing {

namespace fs = std::filesystem;

std::array<Vec3, kMeshPointCount> FaceModel(double lid) {
  std::array<Vec3, kMeshPointCount> p;
  // Filler points on a face-shaped ellipsoid, fixed by index.
  SeededRng rng(468);
  for (std::size_t i = 0; i < kMeshPointCount; ++i) {
    const double a = rng.Uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(rng.Uniform());
    const double x = 260.0 * r * std::cos(a);
    const double y = 20.0 + 300.0 * r * std::sin(a);
    p[i] = Vec3(x, y, 60.0 + 140.0 * r * r);
  }
  const auto& canon = CanonicalHeadModel();
  for (std::size_t k = 0; k < 6; ++k) p[landmarks::kPoseLandmarks[k]] = canon[k];
  p[landmarks::kNoseBridge] = Vec3(0.0, -120.0, 40.0);
  p[landmarks::kCheekLeft] = Vec3(-300.0, -40.0, 200.0);
  p[landmarks::kCheekRight] = Vec3(300.0, -40.0, 200.0);

  auto eye = [&](const landmarks::EyeOutline& o, double sign,
                 std::size_t bottom_center) {
    const double outer = 215.0 * sign;
    const double inner = 95.0 * sign;
    p[o.corner_a] = Vec3(outer, -170.0, 135.0);
    p[o.corner_b] = Vec3(inner, -170.0, 135.0);
    for (std::size_t k = 0; k < o.lids.size(); ++k) {
      const double t = static_cast<double>(k + 1) / 6.0;
      const double x = outer + (inner - outer) * t;
      const double h = lid * std::sin(std::numbers::pi * t);
      p[o.lids[k].upper] = Vec3(x, -170.0 - h, 130.0);
      p[o.lids[k].lower] = Vec3(x, -170.0 + h, 130.0);
    }
    p[bottom_center] = Vec3((outer + inner) / 2.0, -170.0 + lid, 130.0);
  };
  eye(landmarks::kLeftEye, -1.0, landmarks::kLeftEyeBottom);
  eye(landmarks::kRightEye, 1.0, landmarks::kRightEyeBottom);
  return p;
}

LandmarkFrame RenderFrame(const Mat3& rotation, const Vec3& translation,
                          bool eyes_closed, int frame_index, int width,
                          int height) {
  const auto model = FaceModel(eyes_closed ? kClosedLid : kOpenLid);
  const CameraIntrinsics cam = DefaultCamera(width, height);
  LandmarkFrame f;
  f.frame_index = frame_index;
  f.image_width = width;
  f.image_height = height;
  double x0 = width, y0 = height, x1 = 0.0, y1 = 0.0;
  for (const Vec3& m : model) {
    const Point2 px = Project(rotation, translation, m, cam);
    const Vec3 c = rotation * m + translation;
    f.points.push_back({px.x / width, px.y / height, c.z() / kFaceDistance - 1.0});
    x0 = std::min(x0, px.x);
    y0 = std::min(y0, px.y);
    x1 = std::max(x1, px.x);
    y1 = std::max(y1, px.y);
  }
  f.roi_box.x0 = std::max(0, static_cast<int>(std::floor(x0)) - 6);
  f.roi_box.y0 = std::max(0, static_cast<int>(std::floor(y0)) - 6);
  f.roi_box.x1 = std::min(width, static_cast<int>(std::ceil(x1)) + 6);
  f.roi_box.y1 = std::min(height, static_cast<int>(std::ceil(y1)) + 6);
  return f;
}

namespace {

RgbImage MakeRoi(int w, int h, const VideoSpec& spec, SeededRng& rng) {
  RgbImage img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h * 3);
  const double base[3] = {spec.label ? 205.0 : 196.0, 150.0,
                          spec.label ? 128.0 : 118.0};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      // 2x2 cells of noise plus a gentle shading gradient.
      double n = 0.0;
      if (!spec.constant_roi) {
        n = spec.texture_amp * (rng.Uniform() - 0.5) +
            10.0 * std::sin(0.15 * r) * std::cos(0.11 * c);
      }
      for (int ch = 0; ch < 3; ++ch) {
        const double v = spec.constant_roi ? 128.0 : base[ch] + n;
        img.pixels[(static_cast<std::size_t>(r) * w + c) * 3 + ch] =
            static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return img;
}

}  // namespace

LandmarkBundle WriteVideoFixture(const VideoSpec& spec, const std::string& dir) {
  fs::create_directories(fs::path(dir) / spec.id);
  SeededRng rng(spec.seed);
  const double phase_p = rng.Uniform(0.0, 6.0);
  const double phase_r = rng.Uniform(0.0, 6.0);
  LandmarkBundle b;
  b.video_id = spec.id;
  b.fps = 30.0;
  b.frame_count = spec.frames * spec.source_stride;
  b.base_dir = dir;
  for (int i = 0; i < spec.frames; ++i) {
    const double t = static_cast<double>(i);
    const Mat3 rot = RotationFromEuler(
        spec.pitch_amp * std::sin(0.21 * t + phase_p),
        spec.yaw_amp * std::sin(0.27 * t),
        spec.roll_amp * std::sin(0.17 * t + phase_r));
    const Vec3 trans(20.0 * std::sin(0.1 * t), 10.0, kFaceDistance);
    const bool closed =
        std::find(spec.closed.begin(), spec.closed.end(), i) != spec.closed.end();
    LandmarkFrame f = RenderFrame(rot, trans, closed, i * spec.source_stride);
    if (i % spec.roi_every == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "roi_%04d.ppm", f.frame_index);
      const std::string ref = spec.id + "/" + name;
      WritePpm(MakeRoi(f.roi_box.width(), f.roi_box.height(), spec, rng),
               (fs::path(dir) / ref).string());
      b.roi_refs.push_back({f.frame_index, ref});
    }
    b.frames.push_back(std::move(f));
  }
  WriteLandmarkBundle(b, (fs::path(dir) / (spec.id + ".json")).string());
  return b;
}

AudioClip MakeVoiceClip(int label, double seconds, std::uint64_t seed,
                        int sample_rate) {
  SeededRng rng(seed);
  const double f0 = rng.Uniform(110.0, 180.0);
  const double am = rng.Uniform(3.0, 5.0);
  AudioClip clip;
  clip.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  clip.samples.resize(n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    double v = 0.0;
    for (int k = 1; k <= 20; ++k) {
      if (f0 * k > sample_rate / 2.0) break;
      v += std::sin(two_pi * f0 * k * t) / k;
    }
    v *= 0.5 + 0.5 * std::sin(two_pi * am * t);
    if (label == 1) {
      v += 0.4 * std::sin(two_pi * 5200.0 * t) * (1.0 + 0.3 * std::sin(two_pi * 7.0 * t));
    }
    v += 0.01 * rng.Normal();
    clip.samples[i] = 0.3 * v;
  }
  return clip;
}

FixtureSet WriteFixtureSet(const std::string& root, int n_videos, int n_audio,
                           std::uint64_t seed) {
  FixtureSet fx;
  fx.root = root;
  fx.bundles_dir = (fs::path(root) / "bundles").string();
  fx.wav_dir = (fs::path(root) / "wav").string();
  fx.video_labels = (fs::path(root) / "video_labels.csv").string();
  fx.audio_labels = (fs::path(root) / "audio_labels.csv").string();
  fs::create_directories(fx.bundles_dir);
  fs::create_directories(fx.wav_dir);
  SeededRng rng(seed);

  std::ofstream vl(fx.video_labels, std::ios::binary);
  vl << "id,label\n";
  for (int i = 0; i < n_videos; ++i) {
    VideoSpec s;
    char id[32];
    std::snprintf(id, sizeof id, "video%02d", i);
    s.id = id;
    s.label = i % 2;  // alternate real / deepfake
    s.seed = rng.NextU64();
    if (s.label == 0) {
      s.yaw_amp = 12.0;
      s.closed = {4, 5, 15, 16, 24, 25};
      s.texture_amp = 30.0;
    } else {
      s.yaw_amp = 3.0;
      s.pitch_amp = 2.0;
      s.roll_amp = 1.0;
      s.closed = {10, 11};
      s.texture_amp = 8.0;
    }
    WriteVideoFixture(s, fx.bundles_dir);
    vl << s.id << ',' << s.label << '\n';
    fx.video_ids.push_back(s.id);
    fx.video_label_values.push_back(s.label);
  }

  std::ofstream al(fx.audio_labels, std::ios::binary);
  al << "id,label\n";
  for (int i = 0; i < n_audio; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "clip%02d", i);
    const int label = (i + 1) % 2;
    WriteWav(MakeVoiceClip(label, 2.0, rng.NextU64()),
             (fs::path(fx.wav_dir) / (std::string(id) + ".wav")).string());
    al << id << ',' << label << '\n';
    fx.audio_ids.push_back(id);
    fx.audio_label_values.push_back(label);
  }
  return fx;
}

}  // namespace dfusion::testing
