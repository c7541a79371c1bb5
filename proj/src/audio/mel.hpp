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

#include <cstddef>
#include <vector>

#include "audio/matrix.hpp"
#include "core/types.hpp"

namespace dfusion {

// HTK mel scale: m = 2595 log10(1 + f / 700) and its inverse. Negative
// inputs throw InvalidArgument.
double HzToMel(double hz);
double MelToHz(double mel);

enum class Window { kHann, kRectangular };

// Periodic window of the given length.
std::vector<double> MakeWindow(Window window, std::size_t length);

struct Stft {
  std::size_t frame_size = 0;
  std::size_t hop = 0;
  Window window = Window::kHann;
  Matrix magnitudes;  // (frame_size/2 + 1) x n_frames
};

// Frames start at sample 0 with no padding:
// n_frames = 1 + floor((len - frame_size) / hop).
Stft ComputeStft(const AudioClip& clip, std::size_t frame_size,
                 std::size_t hop, Window window = Window::kHann);

// 20 log10(mag / max(mag)) clipped below at floor_db; an all-zero input maps
// to floor_db everywhere.
Matrix AmplitudeToDb(const Matrix& magnitudes, double floor_db);

struct MelFilterBank {
  std::size_t n_bands = 0;
  double sample_rate = 0.0;
  std::size_t frame_size = 0;
  std::vector<double> edges_hz;  // n_bands + 2 mel-spaced points, in Hz
  std::vector<std::size_t> edge_bins;
  Matrix weights;  // n_bands x (frame_size/2 + 1)
};

// Unit-peak triangles over FFT bins. The n_bands + 2 mel-equally-spaced
// points between fmin and fmax are converted to Hz and rounded to the
// nearest bin; band k rises from bin[k] to bin[k+1] and falls to bin[k+2].
// Throws InvalidArgument naming the first pair of colliding bins.
MelFilterBank BuildMelFilterBank(std::size_t n_bands, double sample_rate,
                                 std::size_t frame_size, double fmin,
                                 double fmax);

enum class MelOrder {
  kMelThenDb,  // project the power spectrogram, then convert to dB
  kDbThenMel,  // convert the power spectrogram to dB, then take each band's
               // weighted mean of dB values
};

enum class DbReference {
  kMax,   // 0 dB at the largest value of the clip
  kUnit,  // 0 dB at power 1 (full-scale), values are not rescaled per clip
};

struct MelParams {
  int sample_rate = 16000;  // clips are linearly resampled to this rate
  std::size_t frame_size = 2048;
  std::size_t hop = 512;
  std::size_t n_bands = 128;
  double fmin = 0.0;
  double fmax = 0.0;  // 0 means sample_rate / 2
  double floor_db = -80.0;
  Window window = Window::kHann;
  MelOrder order = MelOrder::kMelThenDb;
  DbReference reference = DbReference::kMax;
};

struct MelSpectrogram {
  MelParams params;
  Matrix db;  // n_bands x n_frames
};

// Linear-interpolation resampler.
AudioClip Resample(const AudioClip& clip, int target_rate);

// M * Y where Y is the (frame_size/2 + 1) x n_frames power spectrogram.
Matrix ApplyFilterBank(const MelFilterBank& bank, const Matrix& spectrum);

MelSpectrogram ComputeMelSpectrogram(const AudioClip& clip,
                                     const MelParams& params = {});

}  // namespace dfusion
