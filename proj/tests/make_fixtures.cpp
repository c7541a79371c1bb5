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

// Writes the synthetic fixture set used by the end-to-end checks.

#include <cstdlib>
#include <iostream>
#include <string>

#include "support/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: dfusion_fixtures OUT_DIR [N_VIDEOS] [N_AUDIO] [SEED]\n";
    return 1;
  }
  const int n_videos = argc > 2 ? std::atoi(argv[2]) : 5;
  const int n_audio = argc > 3 ? std::atoi(argv[3]) : 5;
  const auto seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 7ULL;
  const auto fx = dfusion::testing::WriteFixtureSet(argv[1], n_videos, n_audio, seed);
  std::cout << fx.bundles_dir << "\n" << fx.wav_dir << "\n";
  return 0;
}
