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

#include "core/types.hpp"

namespace dfusion {

// Reads and fully validates a landmark bundle JSON document (schema in
// docs/landmark_bundle.md). Errors name the offending frame index.
LandmarkBundle ReadLandmarkBundle(const std::string& path);
LandmarkBundle ParseLandmarkBundle(const std::string& json_text,
                                   const std::string& base_dir = "");

// Validates the in-memory invariants. When `check_roi_files` is set, every
// roi_ref must resolve to a readable PNM header.
void ValidateBundle(const LandmarkBundle& bundle, bool check_roi_files);

std::string SerializeLandmarkBundle(const LandmarkBundle& bundle);
void WriteLandmarkBundle(const LandmarkBundle& bundle, const std::string& path);

}  // namespace dfusion
