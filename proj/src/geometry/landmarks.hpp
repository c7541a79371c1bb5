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
#include <cstddef>

// Face-mesh landmark indices used by the geometric features. The mesh has
// 468 points; "left"/"right" below are image-left/image-right.
namespace dfusion::landmarks {

inline constexpr std::size_t kNoseBase = 1;
inline constexpr std::size_t kNoseBridge = 197;
inline constexpr std::size_t kMouthLeft = 61;
inline constexpr std::size_t kMouthRight = 291;

// Center-top / center-bottom of each eye; the pupil center is their midpoint.
inline constexpr std::size_t kLeftEyeTop = 159;
inline constexpr std::size_t kLeftEyeBottom = 145;
inline constexpr std::size_t kRightEyeTop = 386;
inline constexpr std::size_t kRightEyeBottom = 374;

// Kite used for cheekbone height: cheekbones, mid-top of the nose, chin.
inline constexpr std::size_t kCheekLeft = 234;
inline constexpr std::size_t kCheekRight = 454;
inline constexpr std::size_t kMidTop = 197;
inline constexpr std::size_t kChin = 152;

struct LidPair {
  std::size_t upper;
  std::size_t lower;
};

// Eye outline. Upper lid points run corner_a -> corner_b and are paired with
// the lower lid point directly beneath them in the mesh topology.
struct EyeOutline {
  std::size_t corner_a;
  std::size_t corner_b;
  std::array<LidPair, 5> lids;
};

// Outline ring 130, 161..157, 243 over 110, 24, 23, 22, 26.
inline constexpr EyeOutline kLeftEye = {
    130, 243, {{{161, 110}, {160, 24}, {159, 23}, {158, 22}, {157, 26}}}};

// Mirror image of kLeftEye across the mesh's symmetry plane.
inline constexpr EyeOutline kRightEye = {
    359, 463, {{{388, 339}, {387, 254}, {386, 253}, {385, 252}, {384, 256}}}};

// Correspondences for the 6-point head model (see pose.hpp).
inline constexpr std::array<std::size_t, 6> kPoseLandmarks = {
    1,    // nose tip
    152,  // chin
    33,   // left eye outer corner
    263,  // right eye outer corner
    61,   // left mouth corner
    291,  // right mouth corner
};

}  // namespace dfusion::landmarks
