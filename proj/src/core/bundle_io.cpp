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

#include "core/bundle_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/image_io.hpp"
#include "json.hpp"

namespace dfusion {
namespace {

using Json = nlohmann::ordered_json;

std::string FrameContext(int frame_index) {
  return "frame " + std::to_string(frame_index) + ": ";
}

const Json& Require(const Json& object, const char* key,
                    const std::string& context) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw DataError(context + "missing field '" + key + "'");
  }
  return *it;
}

int RequireInt(const Json& object, const char* key,
               const std::string& context) {
  const Json& v = Require(object, key, context);
  if (!v.is_number_integer()) {
    throw DataError(context + "field '" + key + "' must be an integer");
  }
  return v.get<int>();
}

double RequireNumber(const Json& v, const std::string& what) {
  if (!v.is_number()) throw DataError(what + " must be a number");
  return v.get<double>();
}

LandmarkFrame ParseFrame(const Json& j, std::size_t position) {
  if (!j.is_object()) {
    throw DataError("frames[" + std::to_string(position) +
                    "] is not an object");
  }
  LandmarkFrame frame;
  frame.frame_index =
      RequireInt(j, "frame_index", "frames[" + std::to_string(position) + "]: ");
  const std::string ctx = FrameContext(frame.frame_index);
  frame.image_width = RequireInt(j, "image_width", ctx);
  frame.image_height = RequireInt(j, "image_height", ctx);

  const Json& box = Require(j, "roi_box", ctx);
  if (!box.is_array() || box.size() != 4) {
    throw DataError(ctx + "roi_box must be [x0, y0, x1, y1]");
  }
  for (const Json& v : box) {
    if (!v.is_number_integer()) {
      throw DataError(ctx + "roi_box entries must be integers");
    }
  }
  frame.roi_box = {box[0].get<int>(), box[1].get<int>(), box[2].get<int>(),
                   box[3].get<int>()};

  const Json& points = Require(j, "points", ctx);
  if (!points.is_array()) throw DataError(ctx + "points must be an array");
  frame.points.reserve(points.size());
  for (const Json& p : points) {
    if (!p.is_array() || p.size() != 3) {
      throw DataError(ctx + "each point must be [x, y, z]");
    }
    frame.points.push_back({RequireNumber(p[0], ctx + "point x"),
                            RequireNumber(p[1], ctx + "point y"),
                            RequireNumber(p[2], ctx + "point z")});
  }
  return frame;
}

void ValidateFrame(const LandmarkFrame& frame) {
  const std::string ctx = FrameContext(frame.frame_index);
  if (frame.frame_index < 0) throw DataError(ctx + "negative frame_index");
  if (frame.image_width <= 0 || frame.image_height <= 0) {
    throw DataError(ctx + "image dimensions must be positive");
  }
  if (frame.points.size() != kMeshPointCount) {
    throw DataError(ctx + "expected " + std::to_string(kMeshPointCount) +
                    " points, found " + std::to_string(frame.points.size()));
  }
  for (std::size_t i = 0; i < frame.points.size(); ++i) {
    const Point3& p = frame.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw DataError(ctx + "point " + std::to_string(i) + " is not finite");
    }
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) {
      throw DataError(ctx + "point " + std::to_string(i) +
                      " outside the normalized [0, 1] range");
    }
  }
  const RoiBox& b = frame.roi_box;
  if (b.x0 < 0 || b.y0 < 0 || b.x1 > frame.image_width ||
      b.y1 > frame.image_height || b.x0 >= b.x1 || b.y0 >= b.y1) {
    throw DataError(ctx + "roi_box out of bounds");
  }
}

}  // namespace

void ValidateBundle(const LandmarkBundle& bundle, bool check_roi_files) {
  if (bundle.video_id.empty()) throw DataError("video_id must be non-empty");
  if (!(bundle.fps > 0.0) || !std::isfinite(bundle.fps)) {
    throw DataError("fps must be positive");
  }
  if (bundle.frames.empty()) throw DataError("bundle has no frames");
  if (bundle.frame_count < static_cast<int>(bundle.frames.size())) {
    throw DataError("frame_count smaller than the number of frames");
  }
  int previous = -1;
  for (const LandmarkFrame& frame : bundle.frames) {
    ValidateFrame(frame);
    if (frame.frame_index <= previous) {
      throw DataError(FrameContext(frame.frame_index) +
                      "frame indices must be strictly increasing");
    }
    if (frame.frame_index >= bundle.frame_count) {
      throw DataError(FrameContext(frame.frame_index) +
                      "frame_index beyond frame_count");
    }
    previous = frame.frame_index;
  }
  for (const RoiRef& ref : bundle.roi_refs) {
    const std::string ctx = FrameContext(ref.frame_index);
    if (bundle.FindFrame(ref.frame_index) == nullptr) {
      throw DataError(ctx + "roi_ref points at a frame not in the bundle");
    }
    if (check_roi_files) {
      try {
        ReadPnmHeader(bundle.Resolve(ref.path));
      } catch (const Error& e) {
        throw DataError(ctx + "roi_ref unreadable: " + e.what());
      }
    }
  }
}

LandmarkBundle ParseLandmarkBundle(const std::string& json_text,
                                   const std::string& base_dir) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("bundle must be a JSON object");

  LandmarkBundle bundle;
  bundle.base_dir = base_dir;
  const Json& id = Require(doc, "video_id", "");
  if (!id.is_string()) throw DataError("video_id must be a string");
  bundle.video_id = id.get<std::string>();
  bundle.fps = RequireNumber(Require(doc, "fps", ""), "fps");
  bundle.frame_count = RequireInt(doc, "frame_count", "");

  const Json& frames = Require(doc, "frames", "");
  if (!frames.is_array()) throw DataError("frames must be an array");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    bundle.frames.push_back(ParseFrame(frames[i], i));
  }

  if (auto it = doc.find("roi_refs"); it != doc.end()) {
    if (!it->is_array()) throw DataError("roi_refs must be an array");
    for (const Json& r : *it) {
      if (!r.is_object()) throw DataError("roi_refs entries must be objects");
      RoiRef ref;
      ref.frame_index = RequireInt(r, "frame_index", "roi_refs: ");
      const Json& path = Require(r, "path", FrameContext(ref.frame_index));
      if (!path.is_string()) throw DataError("roi_refs path must be a string");
      ref.path = path.get<std::string>();
      bundle.roi_refs.push_back(std::move(ref));
    }
  }
  if (auto it = doc.find("audio_ref"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError("audio_ref must be a string or null");
    bundle.audio_ref = it->get<std::string>();
  }
  ValidateBundle(bundle, !base_dir.empty());
  return bundle;
}

LandmarkBundle ReadLandmarkBundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  std::string base = std::filesystem::path(path).parent_path().string();
  if (base.empty()) base = ".";
  try {
    return ParseLandmarkBundle(text.str(), base);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string SerializeLandmarkBundle(const LandmarkBundle& bundle) {
  Json doc;
  doc["video_id"] = bundle.video_id;
  doc["fps"] = bundle.fps;
  doc["frame_count"] = bundle.frame_count;
  Json frames = Json::array();
  for (const LandmarkFrame& f : bundle.frames) {
    Json jf;
    jf["frame_index"] = f.frame_index;
    jf["image_width"] = f.image_width;
    jf["image_height"] = f.image_height;
    jf["roi_box"] = {f.roi_box.x0, f.roi_box.y0, f.roi_box.x1, f.roi_box.y1};
    Json points = Json::array();
    for (const Point3& p : f.points) points.push_back({p.x, p.y, p.z});
    jf["points"] = std::move(points);
    frames.push_back(std::move(jf));
  }
  doc["frames"] = std::move(frames);
  Json refs = Json::array();
  for (const RoiRef& r : bundle.roi_refs) {
    refs.push_back({{"frame_index", r.frame_index}, {"path", r.path}});
  }
  doc["roi_refs"] = std::move(refs);
  doc["audio_ref"] =
      bundle.audio_ref ? Json(*bundle.audio_ref) : Json(nullptr);
  return doc.dump() + "\n";
}

void WriteLandmarkBundle(const LandmarkBundle& bundle,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot write");
  out << SerializeLandmarkBundle(bundle);
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace dfusion
