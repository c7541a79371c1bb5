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

#include "fusion/fusion.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "json.hpp"

namespace dfusion {

ModalityVerdict MakeVerdict(double probability, Modality modality,
                            std::string model_id) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw InvalidArgument("verdict probability must lie in [0, 1]");
  }
  ModalityVerdict v;
  v.probability = probability;
  v.label = probability >= kDecisionThreshold ? 1 : 0;
  v.modality = modality;
  v.model_id = std::move(model_id);
  return v;
}

FusionVerdict Fuse(const ModalityVerdict& video, const ModalityVerdict& audio) {
  FusionVerdict f;
  f.video = video;
  f.audio = audio;
  f.combined_label = (video.label == 1 || audio.label == 1) ? 1 : 0;
  f.category = CategoryFromLabels(video.label, audio.label);
  return f;
}

std::vector<Pairing> AssembleFourway(std::span<const LabeledItem> videos,
                                     std::span<const LabeledItem> audios,
                                     SeededRng& rng) {
  // pools[modality][label]
  std::array<std::array<std::vector<std::string>, 2>, 2> pools;
  auto fill = [&](std::span<const LabeledItem> items, int modality,
                  const char* what) {
    std::set<std::string> seen;
    for (const LabeledItem& item : items) {
      if (item.label != 0 && item.label != 1) {
        throw DataError(std::string(what) + " " + item.id +
                        " has a label other than 0/1");
      }
      if (!seen.insert(item.id).second) {
        throw DataError(std::string("duplicate ") + what + " id " + item.id);
      }
      pools[modality][item.label].push_back(item.id);
    }
    for (int label = 0; label < 2; ++label) {
      if (pools[modality][label].empty()) {
        throw DataError(std::string("no ") + (label ? "deepfake " : "real ") +
                        what + " to pair");
      }
      rng.Shuffle(pools[modality][label]);
    }
  };
  fill(videos, 0, "video");
  fill(audios, 1, "audio");

  std::size_t smallest = pools[0][0].size();
  for (const auto& m : pools) {
    for (const auto& p : m) smallest = std::min(smallest, p.size());
  }
  std::array<std::size_t, 4> count;
  count.fill(smallest / 2);
  auto used = [&](int modality, int label) {
    std::size_t n = 0;
    for (int c = 0; c < 4; ++c) {
      const auto cat = static_cast<FourWayCategory>(c);
      const int l = modality == 0 ? VideoLabelOf(cat) : AudioLabelOf(cat);
      if (l == label) n += count[static_cast<std::size_t>(c)];
    }
    return n;
  };
  std::vector<int> order = {0, 1, 2, 3};
  rng.Shuffle(order);
  for (int c : order) {
    const auto cat = static_cast<FourWayCategory>(c);
    const int vl = VideoLabelOf(cat);
    const int al = AudioLabelOf(cat);
    if (used(0, vl) < pools[0][vl].size() && used(1, al) < pools[1][al].size()) {
      ++count[static_cast<std::size_t>(c)];
    }
  }

  std::vector<Pairing> out;
  std::array<std::array<std::size_t, 2>, 2> next{};
  for (int c = 0; c < 4; ++c) {
    const auto cat = static_cast<FourWayCategory>(c);
    const int vl = VideoLabelOf(cat);
    const int al = AudioLabelOf(cat);
    for (std::size_t k = 0; k < count[static_cast<std::size_t>(c)]; ++k) {
      Pairing p;
      p.video_id = pools[0][vl][next[0][vl]++];
      p.audio_id = pools[1][al][next[1][al]++];
      p.video_label = vl;
      p.audio_label = al;
      p.sample_id = p.video_id + "+" + p.audio_id;
      out.push_back(std::move(p));
    }
  }
  return out;
}

void WritePairingCsv(std::span<const Pairing> pairs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "sample_id,video_id,audio_id,video_label,audio_label,category\n";
  for (const Pairing& p : pairs) {
    out << p.sample_id << ',' << p.video_id << ',' << p.audio_id << ','
        << p.video_label << ',' << p.audio_label << ','
        << CategoryName(p.category()) << '\n';
  }
  if (!out) throw DataError("failed writing " + path);
}

std::vector<Pairing> ReadPairingCsv(const std::string& path) {
  const CsvTable table = ReadCsv(path);
  const std::vector<std::string> expected = {
      "sample_id", "video_id", "audio_id", "video_label", "audio_label",
      "category"};
  if (table.header != expected) {
    throw DataError(path + ": unexpected pairing manifest header");
  }
  std::vector<Pairing> pairs;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = path + " row " + std::to_string(i + 1);
    Pairing p;
    p.sample_id = row[0];
    p.video_id = row[1];
    p.audio_id = row[2];
    p.video_label = ParseLabelCell(row[3], where);
    p.audio_label = ParseLabelCell(row[4], where);
    if (CategoryName(p.category()) != row[5]) {
      throw DataError(where + ": category does not match the labels");
    }
    if (!seen.insert(p.sample_id).second) {
      throw DataError(where + ": duplicate sample id " + p.sample_id);
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

namespace {

void Finish(FourwayReport& r) {
  r.total = r.correct = r.strict_correct = 0;
  for (const CategoryTally& t : r.categories) {
    r.total += t.samples;
    r.correct += t.correct;
    r.strict_correct += t.strict_correct;
  }
  if (r.total > 0) {
    r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
    r.strict_accuracy =
        static_cast<double>(r.strict_correct) / static_cast<double>(r.total);
  }
}

double Ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

FourwayReport ReportFromCounts(const std::array<std::size_t, 4>& samples,
                               const std::array<std::size_t, 4>& correct) {
  FourwayReport r;
  for (std::size_t c = 0; c < 4; ++c) {
    if (correct[c] > samples[c]) {
      throw InvalidArgument("correct count exceeds sample count");
    }
    r.categories[c].category = static_cast<FourWayCategory>(c);
    r.categories[c].samples = samples[c];
    r.categories[c].correct = correct[c];
  }
  Finish(r);
  return r;
}

FourwayReport EvaluateFourway(std::span<const Pairing> pairs,
                              const std::map<std::string, double>& video_probs,
                              const std::map<std::string, double>& audio_probs,
                              const std::string& video_model_id,
                              const std::string& audio_model_id) {
  FourwayReport r;
  for (std::size_t c = 0; c < 4; ++c) {
    r.categories[c].category = static_cast<FourWayCategory>(c);
  }
  for (const Pairing& p : pairs) {
    const auto v = video_probs.find(p.video_id);
    const auto a = audio_probs.find(p.audio_id);
    if (v == video_probs.end()) {
      throw DataError("sample " + p.sample_id + ": no video prediction for " +
                      p.video_id);
    }
    if (a == audio_probs.end()) {
      throw DataError("sample " + p.sample_id + ": no audio prediction for " +
                      p.audio_id);
    }
    const FusionVerdict f =
        Fuse(MakeVerdict(v->second, Modality::kVideo, video_model_id),
             MakeVerdict(a->second, Modality::kAudio, audio_model_id));
    CategoryTally& t = r.categories[static_cast<std::size_t>(p.category())];
    ++t.samples;
    if (f.combined_label == p.truth()) ++t.correct;
    if (f.video.label == p.video_label && f.audio.label == p.audio_label) {
      ++t.strict_correct;
    }
    r.pairs.push_back(p);
    r.verdicts.push_back(f);
  }
  Finish(r);
  return r;
}

void WriteFourwayCsv(const FourwayReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "category,samples,correct,accuracy,strict_correct,strict_accuracy\n";
  for (const CategoryTally& t : report.categories) {
    out << CategoryName(t.category) << ',' << t.samples << ',' << t.correct
        << ',' << Num(Ratio(t.correct, t.samples)) << ',' << t.strict_correct
        << ',' << Num(Ratio(t.strict_correct, t.samples)) << '\n';
  }
  out << "overall," << report.total << ',' << report.correct << ','
      << Num(report.accuracy) << ',' << report.strict_correct << ','
      << Num(report.strict_accuracy) << '\n';
  if (!out) throw DataError("failed writing " + path);
}

std::string FourwayJson(const FourwayReport& report) {
  nlohmann::ordered_json j;
  j["samples"] = report.total;
  j["correct"] = report.correct;
  j["accuracy"] = report.accuracy;
  j["strict_correct"] = report.strict_correct;
  j["strict_accuracy"] = report.strict_accuracy;
  nlohmann::ordered_json cats = nlohmann::ordered_json::array();
  for (const CategoryTally& t : report.categories) {
    cats.push_back({{"category", std::string(CategoryName(t.category))},
                    {"samples", t.samples},
                    {"correct", t.correct},
                    {"accuracy", Ratio(t.correct, t.samples)},
                    {"strict_correct", t.strict_correct},
                    {"strict_accuracy", Ratio(t.strict_correct, t.samples)}});
  }
  j["categories"] = std::move(cats);
  return j.dump(2) + "\n";
}

void WriteVerdictCsv(const FourwayReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "sample_id,video_id,audio_id,category,video_probability,video_label,"
         "audio_probability,audio_label,combined_label,truth,correct\n";
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    const Pairing& p = report.pairs[i];
    const FusionVerdict& f = report.verdicts[i];
    out << p.sample_id << ',' << p.video_id << ',' << p.audio_id << ','
        << CategoryName(p.category()) << ',' << Num(f.video.probability) << ','
        << f.video.label << ',' << Num(f.audio.probability) << ','
        << f.audio.label << ',' << f.combined_label << ',' << p.truth() << ','
        << (f.combined_label == p.truth() ? 1 : 0) << '\n';
  }
  if (!out) throw DataError("failed writing " + path);
}

std::string FormatFourwayTable(const FourwayReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-18s %8s %8s %9s %8s\n", "category",
                "samples", "correct", "accuracy", "strict");
  os << line;
  for (const CategoryTally& t : report.categories) {
    std::snprintf(line, sizeof line, "%-18s %8zu %8zu %9.4f %8zu\n",
                  std::string(CategoryName(t.category)).c_str(), t.samples,
                  t.correct, Ratio(t.correct, t.samples), t.strict_correct);
    os << line;
  }
  std::snprintf(line, sizeof line, "%-18s %8zu %8zu %9.4f %8zu\n", "overall",
                report.total, report.correct, report.accuracy,
                report.strict_correct);
  os << line;
  return os.str();
}

}  // namespace dfusion
