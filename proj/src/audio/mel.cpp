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

#include "audio/mel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "audio/fft.hpp"
#include "core/error.hpp"

namespace dfusion {

double HzToMel(double hz) {
  if (!(hz >= 0.0)) throw InvalidArgument("frequency must be >= 0");
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}

double MelToHz(double mel) {
  if (!(mel >= 0.0)) throw InvalidArgument("mel value must be >= 0");
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<double> MakeWindow(Window window, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (window == Window::kHann) {
    for (std::size_t i = 0; i < length; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                  static_cast<double>(i) /
                                  static_cast<double>(length));
    }
  }
  return w;
}

Stft ComputeStft(const AudioClip& clip, std::size_t frame_size,
                 std::size_t hop, Window window) {
  if (!IsPowerOfTwo(frame_size)) {
    throw InvalidArgument("frame size must be a power of two");
  }
  if (hop == 0 || hop > frame_size) {
    throw InvalidArgument("hop must be in [1, frame_size]");
  }
  if (clip.samples.size() < frame_size) {
    throw InvalidArgument("clip shorter than one frame");
  }
  const std::size_t n_frames = 1 + (clip.samples.size() - frame_size) / hop;
  const std::size_t bins = frame_size / 2 + 1;
  const std::vector<double> w = MakeWindow(window, frame_size);

  Stft out;
  out.frame_size = frame_size;
  out.hop = hop;
  out.window = window;
  out.magnitudes = Matrix(bins, n_frames);
  std::vector<std::complex<double>> buffer(frame_size);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double* frame = clip.samples.data() + f * hop;
    for (std::size_t i = 0; i < frame_size; ++i) buffer[i] = frame[i] * w[i];
    Fft(buffer);
    for (std::size_t k = 0; k < bins; ++k) {
      out.magnitudes(k, f) = std::abs(buffer[k]);
    }
  }
  return out;
}

namespace {

// scale * log10(value / reference) clipped at floor_db.
Matrix ToDb(const Matrix& values, double scale, double reference,
            double floor_db) {
  Matrix out(values.rows, values.cols, floor_db);
  if (!(reference > 0.0)) return out;
  for (std::size_t i = 0; i < values.data.size(); ++i) {
    const double v = values.data[i];
    if (v > 0.0) {
      out.data[i] = std::max(floor_db, scale * std::log10(v / reference));
    }
  }
  return out;
}

double MaxValue(const Matrix& m) {
  return m.data.empty() ? 0.0 : *std::max_element(m.data.begin(), m.data.end());
}

Matrix PowerToDb(const Matrix& power, DbReference reference, double floor_db) {
  const double ref = reference == DbReference::kMax ? MaxValue(power) : 1.0;
  return ToDb(power, 10.0, ref, floor_db);
}

}  // namespace

Matrix AmplitudeToDb(const Matrix& magnitudes, double floor_db) {
  return ToDb(magnitudes, 20.0, MaxValue(magnitudes), floor_db);
}

MelFilterBank BuildMelFilterBank(std::size_t n_bands, double sample_rate,
                                 std::size_t frame_size, double fmin,
                                 double fmax) {
  if (n_bands < 1) throw InvalidArgument("need at least one mel band");
  if (!(sample_rate > 0.0) || frame_size < 2) {
    throw InvalidArgument("invalid sample rate or frame size");
  }
  if (!(fmin >= 0.0) || !(fmin < fmax) || fmax > sample_rate / 2.0) {
    throw InvalidArgument("need 0 <= fmin < fmax <= sample_rate / 2");
  }
  MelFilterBank bank;
  bank.n_bands = n_bands;
  bank.sample_rate = sample_rate;
  bank.frame_size = frame_size;
  const std::size_t bins = frame_size / 2 + 1;

  const double mel_lo = HzToMel(fmin);
  const double mel_hi = HzToMel(fmax);
  const std::size_t points = n_bands + 2;
  for (std::size_t i = 0; i < points; ++i) {
    const double mel =
        mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                     static_cast<double>(points - 1);
    const double hz = MelToHz(mel);
    bank.edges_hz.push_back(hz);
    const auto bin = static_cast<std::size_t>(
        std::lround(hz * static_cast<double>(frame_size) / sample_rate));
    bank.edge_bins.push_back(std::min(bin, bins - 1));
  }
  for (std::size_t i = 0; i + 1 < points; ++i) {
    if (bank.edge_bins[i] >= bank.edge_bins[i + 1]) {
      throw InvalidArgument(
          "mel points " + std::to_string(i) + " and " + std::to_string(i + 1) +
          " round to the same FFT bin " + std::to_string(bank.edge_bins[i]) +
          "; too many bands for this frame size");
    }
  }

  bank.weights = Matrix(n_bands, bins);
  for (std::size_t band = 0; band < n_bands; ++band) {
    const double left = static_cast<double>(bank.edge_bins[band]);
    const double center = static_cast<double>(bank.edge_bins[band + 1]);
    const double right = static_cast<double>(bank.edge_bins[band + 2]);
    for (std::size_t k = bank.edge_bins[band]; k <= bank.edge_bins[band + 2];
         ++k) {
      const double x = static_cast<double>(k);
      bank.weights(band, k) =
          x <= center ? (x - left) / (center - left) : (right - x) / (right - center);
    }
  }
  return bank;
}

AudioClip Resample(const AudioClip& clip, int target_rate) {
  if (target_rate <= 0 || clip.sample_rate <= 0) {
    throw InvalidArgument("sample rates must be positive");
  }
  if (clip.sample_rate == target_rate || clip.samples.empty()) {
    return AudioClip{target_rate, clip.samples};
  }
  const double ratio =
      static_cast<double>(clip.sample_rate) / static_cast<double>(target_rate);
  // Duration is preserved; positions past the last input sample hold it.
  const std::size_t last = clip.samples.size() - 1;
  const auto n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(
             static_cast<double>(clip.samples.size()) / ratio)));
  AudioClip out{target_rate, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double pos = static_cast<double>(i) * ratio;
    const std::size_t i0 = std::min(static_cast<std::size_t>(pos), last);
    const std::size_t i1 = std::min(i0 + 1, last);
    const double t = pos - static_cast<double>(i0);
    out.samples[i] = clip.samples[i0] * (1.0 - t) + clip.samples[i1] * t;
  }
  return out;
}

Matrix ApplyFilterBank(const MelFilterBank& bank, const Matrix& spectrum) {
  if (spectrum.rows != bank.weights.cols) {
    throw InvalidArgument("spectrum rows do not match the filter bank");
  }
  Matrix out(bank.n_bands, spectrum.cols);
  for (std::size_t b = 0; b < bank.n_bands; ++b) {
    const std::size_t lo = bank.edge_bins[b];
    const std::size_t hi = bank.edge_bins[b + 2];
    for (std::size_t k = lo; k <= hi; ++k) {
      const double w = bank.weights(b, k);
      if (w == 0.0) continue;
      for (std::size_t f = 0; f < spectrum.cols; ++f) {
        out(b, f) += w * spectrum(k, f);
      }
    }
  }
  return out;
}

MelSpectrogram ComputeMelSpectrogram(const AudioClip& clip,
                                     const MelParams& params) {
  const AudioClip audio = Resample(clip, params.sample_rate);
  const double fmax = params.fmax > 0.0 ? params.fmax : params.sample_rate / 2.0;
  const MelFilterBank bank = BuildMelFilterBank(
      params.n_bands, params.sample_rate, params.frame_size, params.fmin, fmax);
  Stft stft = ComputeStft(audio, params.frame_size, params.hop, params.window);
  Matrix& power = stft.magnitudes;
  for (double& v : power.data) v *= v;

  MelSpectrogram out;
  out.params = params;
  out.params.fmax = fmax;
  if (params.order == MelOrder::kMelThenDb) {
    out.db = PowerToDb(ApplyFilterBank(bank, power), params.reference,
                       params.floor_db);
  } else {
    const Matrix power_db = PowerToDb(power, params.reference, params.floor_db);
    out.db = ApplyFilterBank(bank, power_db);
    for (std::size_t b = 0; b < bank.n_bands; ++b) {
      double weight_sum = 0.0;
      for (std::size_t k = 0; k < bank.weights.cols; ++k) {
        weight_sum += bank.weights(b, k);
      }
      for (std::size_t f = 0; f < out.db.cols; ++f) out.db(b, f) /= weight_sum;
    }
  }
  return out;
}

}  // namespace dfusion
