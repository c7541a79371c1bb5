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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace dfusion {

inline constexpr double kDecisionThreshold = 0.5;

enum class Modality { kVideo, kAudio };

struct ModalityVerdict {
  double probability = 0.0;
  int label = 0;  // 1 iff probability >= kDecisionThreshold
  Modality modality = Modality::kVideo;
  std::string model_id;
};

// Throws InvalidArgument when the probability is outside [0, 1].
ModalityVerdict MakeVerdict(double probability, Modality modality,
                            std::string model_id = "");

struct FusionVerdict {
  ModalityVerdict video;
  ModalityVerdict audio;
  int combined_label = 0;  // 1 (deepfake) iff either modality says 1
  FourWayCategory category = FourWayCategory::kRealReal;
};

FusionVerdict Fuse(const ModalityVerdict& video, const ModalityVerdict& audio);

struct LabeledItem {
  std::string id;
  int label = 0;
};

// One evaluation sample: a video paired with an audio clip.
struct Pairing {
  std::string sample_id;
  std::string video_id;
  std::string audio_id;
  int video_label = 0;
  int audio_label = 0;

  FourWayCategory category() const {
    return CategoryFromLabels(video_label, audio_label);
  }
  // Ground truth: deepfake if either source is.
  int truth() const { return video_label | audio_label; }
};

// Pairs every video and audio at most once so the four categories are as
// equal as the pools allow: floor(min pool / 2) per category, then one
// more per category, in a seeded order, while the pools last. Output is
// grouped by category (real-real first). Throws DataError when a pool for
// either label of either modality is empty or ids repeat.
std::vector<Pairing> AssembleFourway(std::span<const LabeledItem> videos,
                                     std::span<const LabeledItem> audios,
                                     SeededRng& rng);

void WritePairingCsv(std::span<const Pairing> pairs, const std::string& path);
std::vector<Pairing> ReadPairingCsv(const std::string& path);

struct CategoryTally {
  FourWayCategory category = FourWayCategory::kRealReal;
  std::size_t samples = 0;
  std::size_t correct = 0;         // combined label matches the truth
  std::size_t strict_correct = 0;  // both modality labels match their source
};

struct FourwayReport {
  std::array<CategoryTally, 4> categories;
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t strict_correct = 0;
  double accuracy = 0.0;
  double strict_accuracy = 0.0;
  std::vector<Pairing> pairs;
  std::vector<FusionVerdict> verdicts;
};

// Totals from per-category counts (index = category); strict counts are
// left at zero.
FourwayReport ReportFromCounts(const std::array<std::size_t, 4>& samples,
                               const std::array<std::size_t, 4>& correct);

// Looks up each pair's video and audio probabilities by id. Throws
// DataError naming the sample when either is missing.
FourwayReport EvaluateFourway(std::span<const Pairing> pairs,
                              const std::map<std::string, double>& video_probs,
                              const std::map<std::string, double>& audio_probs,
                              const std::string& video_model_id = "video",
                              const std::string& audio_model_id = "audio");

// category,samples,correct,accuracy,strict_correct,strict_accuracy plus an
// "overall" row.
void WriteFourwayCsv(const FourwayReport& report, const std::string& path);
std::string FourwayJson(const FourwayReport& report);
void WriteVerdictCsv(const FourwayReport& report, const std::string& path);
std::string FormatFourwayTable(const FourwayReport& report);

}  // namespace dfusion
