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

#include "extract/video_features.hpp"

#include <cstdio>
#include <set>

#include "core/error.hpp"
#include "core/image_io.hpp"
#include "geometry/kite.hpp"
#include "texture/orgb.hpp"

namespace dfusion {

RgbImage LoadRoi(const LandmarkBundle& bundle, const LandmarkFrame& frame,
                 const std::string& ref) {
  RgbImage img = ReadRgb(bundle.Resolve(ref));
  const RoiBox& box = frame.roi_box;
  if (img.width == box.width() && img.height == box.height()) return img;
  if (img.width == frame.image_width && img.height == frame.image_height) {
    RgbImage crop;
    crop.width = box.width();
    crop.height = box.height();
    crop.pixels.reserve(static_cast<std::size_t>(crop.width) * crop.height * 3);
    for (int r = box.y0; r < box.y1; ++r) {
      const std::uint8_t* row = img.at(r, box.x0);
      crop.pixels.insert(crop.pixels.end(), row, row + crop.width * 3);
    }
    return crop;
  }
  throw DataError("frame " + std::to_string(frame.frame_index) + ": ROI image " +
                  ref + " is " + std::to_string(img.width) + "x" +
                  std::to_string(img.height) +
                  ", matching neither roi_box nor the frame size");
}

VideoExtraction ExtractVideoFeatures(const LandmarkBundle& bundle,
                                     const VideoExtractOptions& options) {
  if (options.stride < 1) throw InvalidArgument("stride must be >= 1");
  VideoExtraction out;
  out.features.video_id = bundle.video_id;

  LandmarkBundle sampled = bundle;
  sampled.frames.clear();
  std::set<int> sampled_index;
  for (std::size_t i = 0; i < bundle.frames.size();
       i += static_cast<std::size_t>(options.stride)) {
    sampled.frames.push_back(bundle.frames[i]);
    sampled_index.insert(bundle.frames[i].frame_index);
  }
  out.sampled_frames = static_cast<int>(sampled.frames.size());
  if (sampled.frames.size() < 2) {
    throw DataError(bundle.video_id + ": need at least 2 sampled frames, got " +
                    std::to_string(sampled.frames.size()));
  }

  double nose = 0.0, lip = 0.0, pupils = 0.0, cheek = 0.0;
  int kites = 0;
  std::vector<EulerAngles> poses;
  for (const LandmarkFrame& f : sampled.frames) {
    nose += NoseSize(f);
    lip += LipSize(f);
    pupils += InterPupilDistance(f);
    try {
      cheek += CheekboneHeight(f).height;
      ++kites;
    } catch (const Error& e) {
      ++out.kite_failures;
      out.notes.push_back("frame " + std::to_string(f.frame_index) +
                          ": cheekbone kite skipped: " + e.what());
    }
    try {
      poses.push_back(FramePose(f, options.pnp).euler);
    } catch (const Error& e) {
      ++out.pnp_failures;
      out.notes.push_back("frame " + std::to_string(f.frame_index) +
                          ": head pose skipped: " + e.what());
    }
  }
  const double n = static_cast<double>(sampled.frames.size());
  if (kites == 0) throw DataError(bundle.video_id + ": no valid cheekbone kite");
  if (poses.size() < 2) {
    throw DataError(bundle.video_id + ": fewer than 2 frames with a head pose");
  }
  VideoFeatureVector& v = out.features;
  v[VideoFeature::kNoseSize] = nose / n;
  v[VideoFeature::kLipSize] = lip / n;
  v[VideoFeature::kInterPupilDistance] = pupils / n;
  v[VideoFeature::kCheekboneHeight] = cheek / kites;
  v[VideoFeature::kBlinkCount] = CountBlinks(sampled, options.blink);
  const HeadposeSpread spread = HeadposeFeatures(poses);
  v[VideoFeature::kHeadposeX] = spread.x;
  v[VideoFeature::kHeadposeY] = spread.y;
  v[VideoFeature::kHeadposeZ] = spread.z;

  double contrast = 0.0, correlation = 0.0, l = 0.0, c1 = 0.0, c2 = 0.0;
  int correlated = 0;
  for (const RoiRef& ref : bundle.roi_refs) {
    if (sampled_index.count(ref.frame_index) == 0) continue;
    const LandmarkFrame* frame = bundle.FindFrame(ref.frame_index);
    if (frame == nullptr) {
      throw DataError("roi_ref for unknown frame " +
                      std::to_string(ref.frame_index));
    }
    const RgbImage roi = LoadRoi(bundle, *frame, ref.path);
    const BlockTexture tex = BlockwiseTexture(LuminanceImage(roi), options.texture);
    contrast += tex.contrast;
    out.degenerate_blocks += tex.degenerate_blocks;
    if (tex.correlation) {
      correlation += *tex.correlation;
      ++correlated;
    }
    const OrgbPixel tone = SkinToneFeatures(roi);
    l += tone.l;
    c1 += tone.c1;
    c2 += tone.c2;
    ++out.roi_frames;
  }
  if (out.roi_frames == 0) {
    throw DataError(bundle.video_id + ": no ROI image for any sampled frame");
  }
  const double m = out.roi_frames;
  v[VideoFeature::kContrast] = contrast / m;
  if (correlated > 0) {
    v[VideoFeature::kCorrelation] = correlation / correlated;
  } else {
    v[VideoFeature::kCorrelation] = 1.0;
    out.correlation_substituted = true;
    out.notes.push_back("correlation degenerate in every ROI block; using 1");
  }
  if (out.degenerate_blocks > 0) {
    out.notes.push_back(std::to_string(out.degenerate_blocks) +
                        " degenerate texture block(s) excluded from correlation");
  }
  v[VideoFeature::kLuminance] = l / m;
  v[VideoFeature::kChrominance1] = c1 / m;
  v[VideoFeature::kChrominance2] = c2 / m;
  Validate(v);
  return out;
}

}  // namespace dfusion
