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

// RIFF/WAVE PCM 16-bit little-endian, 1 or 2 channels. Stereo frames are
// averaged to mono; samples are scaled by 1/32768.
AudioClip ReadWav(const std::string& path);

// Writes mono PCM-16; samples are clamped to [-1, 1) and rounded.
void WriteWav(const AudioClip& clip, const std::string& path);

}  // namespace dfusion
