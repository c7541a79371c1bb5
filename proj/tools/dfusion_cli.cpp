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

// Command-line front end. Talks to the library only through dfusion.h.

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dfusion/dfusion.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

// Exit codes: 0 success, 1 usage, 2 data, 3 numeric.
struct Failure {
  int code;
  std::string message;
};

void Check(dfx_status status) {
  if (status == DFX_OK) return;
  const int code = status == DFX_ERR_INTERNAL ? 2 : static_cast<int>(status);
  throw Failure{code, dfx_last_error()};
}

[[noreturn]] void DataFailure(const std::string& message) {
  throw Failure{2, message};
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using DatasetPtr =
    std::unique_ptr<dfx_dataset, Deleter<dfx_dataset, dfx_dataset_destroy>>;
using ModelPtr =
    std::unique_ptr<dfx_model, Deleter<dfx_model, dfx_model_destroy>>;
using MatrixPtr =
    std::unique_ptr<dfx_matrix, Deleter<dfx_matrix, dfx_matrix_destroy>>;
using PairingPtr =
    std::unique_ptr<dfx_pairing, Deleter<dfx_pairing, dfx_pairing_destroy>>;
using FourwayPtr =
    std::unique_ptr<dfx_fourway, Deleter<dfx_fourway, dfx_fourway_destroy>>;

void Info(const std::string& message) {
  std::cerr << "[info] " << message << "\n";
}

// ------------------------------------------------------------ run manifest

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Failure{2, "SHA-256 failed"};
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) DataFailure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) DataFailure("cannot write " + path);
  out << text;
  if (!out) DataFailure("failed writing " + path);
}

class Manifest {
 public:
  Manifest(std::string command, const CLI::App* sub) : command_(std::move(command)) {
    for (const CLI::Option* opt : sub->get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "help" || name == "manifest") continue;
      std::string value;
      if (opt->count() > 0) {
        for (const std::string& r : opt->results()) {
          if (!value.empty()) value += ' ';
          value += r;
        }
      } else {
        value = opt->get_default_str();
      }
      config_[name] = value;
    }
  }

  // Files are hashed; directories contribute every regular file, sorted.
  void AddInput(const std::string& path) {
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(path)) {
        if (e.is_regular_file()) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const fs::path& f : files) {
        inputs_.push_back({{"path", f.generic_string()},
                           {"sha256", Sha256Hex(ReadFile(f.string()))}});
      }
    } else {
      inputs_.push_back(
          {{"path", path}, {"sha256", Sha256Hex(ReadFile(path))}});
    }
  }

  void AddOutput(const std::string& path) { outputs_.push_back(path); }

  void Write(const std::string& path, std::uint64_t seed) const {
    Json config(config_);
    Json j;
    j["tool"] = "dfusion";
    j["version"] = dfx_version();
    j["command"] = command_;
    j["seed"] = seed;
    j["config_sha256"] = Sha256Hex(config.dump());
    j["config"] = config;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    WriteText(path, j.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::map<std::string, std::string> config_;
  Json inputs_ = Json::array();
  std::vector<std::string> outputs_;
};

// ------------------------------------------------------------------ helpers

std::vector<fs::path> ListFiles(const std::string& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) DataFailure(dir + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// id,label CSV.
std::map<std::string, int> ReadLabels(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::string line;
  std::map<std::string, int> labels;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "id,label") DataFailure(path + ": header must be id,label");
      continue;
    }
    const auto comma = line.find(',');
    const std::string label = comma == std::string::npos ? "" : line.substr(comma + 1);
    if (label != "0" && label != "1") {
      DataFailure(path + ":" + std::to_string(line_no) + ": label must be 0 or 1");
    }
    labels[line.substr(0, comma)] = label == "1" ? 1 : 0;
  }
  return labels;
}

bool IsAudioIndex(const std::string& path) {
  std::ifstream in(path);
  if (!in) DataFailure("cannot read " + path);
  std::string header;
  std::getline(in, header);
  return header.rfind("clip_id,", 0) == 0;
}

struct DataOptions {
  std::string path;
  std::size_t frames = 128;
  double pad_db = -80.0;
};

// Feature CSV, or a spectrogram index (matrix rows when `matrix` is set,
// band means otherwise).
DatasetPtr LoadData(const DataOptions& d, bool matrix) {
  dfx_dataset* ds = nullptr;
  if (IsAudioIndex(d.path)) {
    Check(dfx_dataset_read_audio_index(
        d.path.c_str(), matrix ? DFX_AUDIO_SPECTROGRAM : DFX_AUDIO_BAND_MEANS,
        d.frames, d.pad_db, &ds));
  } else {
    if (matrix) DataFailure(d.path + ": CNN models need a spectrogram index");
    Check(dfx_dataset_read_feature_csv(d.path.c_str(), &ds));
  }
  return DatasetPtr(ds);
}

std::vector<int> Labels(const dfx_dataset* ds) {
  std::vector<int> out;
  for (std::size_t i = 0; i < dfx_dataset_size(ds); ++i) {
    const int l = dfx_dataset_label(ds, i);
    if (l == DFX_NO_LABEL) {
      DataFailure(std::string("row ") + dfx_dataset_id(ds, i) + " has no label");
    }
    out.push_back(l);
  }
  return out;
}

std::vector<double> Predict(const dfx_model* model, const dfx_dataset* ds) {
  std::vector<double> probs(dfx_dataset_size(ds));
  Check(dfx_model_predict(model, ds, probs.data(), probs.size()));
  return probs;
}

std::string ReportText(const dfx_report& r) {
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof line, "%-14s %10s %10s %10s %10s\n", "",
                "precision", "recall", "f1-score", "support");
  os << line;
  auto row = [&](const char* name, const dfx_class_metrics& m) {
    std::snprintf(line, sizeof line, "%-14s %10.4f %10.4f %10.4f %10zu\n",
                  name, m.precision, m.recall, m.f1, m.support);
    os << line;
  };
  row("real", r.per_class[0]);
  row("deepfake", r.per_class[1]);
  os << "\n";
  std::snprintf(line, sizeof line, "%-14s %10s %10s %10.4f %10zu\n",
                "accuracy", "", "", r.accuracy, r.tp + r.fp + r.tn + r.fn);
  os << line;
  row("macro avg", r.macro);
  row("weighted avg", r.weighted);
  os << "\nconfusion: tp=" << r.tp << " fp=" << r.fp << " tn=" << r.tn
     << " fn=" << r.fn << "\n";
  if (r.undefined) os << "note: some ratios had a zero denominator (set to 0)\n";
  return os.str();
}

Json ReportJson(const dfx_report& r) {
  auto m = [](const dfx_class_metrics& c) {
    return Json{{"precision", c.precision},
                {"recall", c.recall},
                {"f1", c.f1},
                {"support", c.support}};
  };
  Json j;
  j["samples"] = r.tp + r.fp + r.tn + r.fn;
  j["accuracy"] = r.accuracy;
  j["confusion"] = {{"tp", r.tp}, {"fp", r.fp}, {"tn", r.tn}, {"fn", r.fn}};
  j["per_class"] = {{"real", m(r.per_class[0])}, {"deepfake", m(r.per_class[1])}};
  j["macro"] = m(r.macro);
  j["weighted"] = m(r.weighted);
  j["undefined"] = r.undefined != 0;
  return j;
}

dfx_report Evaluate(const dfx_model* model, const dfx_dataset* ds) {
  if (dfx_dataset_size(ds) == 0) DataFailure("evaluation set is empty");
  const std::vector<int> truth = Labels(ds);
  std::vector<int> pred;
  for (double p : Predict(model, ds)) pred.push_back(p >= 0.5 ? 1 : 0);
  dfx_report r{};
  Check(dfx_classification_report(truth.data(), pred.data(), truth.size(), &r));
  return r;
}

std::string DefaultManifest(const std::string& manifest, const fs::path& dir) {
  return manifest.empty() ? (dir / "manifest.json").string() : manifest;
}

// ------------------------------------------------------------------ commands

struct Common {
  std::uint64_t seed = 42;
  std::string manifest;
};

struct ExtractVideoArgs {
  std::string bundles, out, labels;
  int jobs = 1;
  dfx_video_options video{};
};

int RunExtractVideo(const ExtractVideoArgs& a, const Common& c,
                    const CLI::App* sub) {
  Manifest manifest("extract-video", sub);
  const std::vector<fs::path> files = ListFiles(a.bundles, ".json");
  if (files.empty()) DataFailure("no *.json bundles in " + a.bundles);
  std::map<std::string, int> labels;
  if (!a.labels.empty()) {
    labels = ReadLabels(a.labels);
    manifest.AddInput(a.labels);
  }
  manifest.AddInput(a.bundles);

  std::vector<dfx_video_result> results(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      if (dfx_extract_video_features(files[i].string().c_str(), &a.video,
                                     &results[i]) != DFX_OK) {
        errors[i] = dfx_last_error();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  dfx_dataset* raw = nullptr;
  Check(dfx_dataset_create(DFX_VIDEO_FEATURE_COUNT, &raw));
  DatasetPtr ds(raw);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "[error] " << files[i].generic_string() << ": " << errors[i]
                << " (skipped)\n";
      continue;
    }
    const dfx_video_result& r = results[i];
    int label = DFX_NO_LABEL;
    if (!a.labels.empty()) {
      const auto it = labels.find(r.video_id);
      if (it == labels.end()) {
        std::cerr << "[warning] " << r.video_id << ": no label in " << a.labels
                  << "\n";
      } else {
        label = it->second;
      }
    }
    Info(std::string(r.video_id) + ": " + std::to_string(r.sampled_frames) +
         " frames, " + std::to_string(r.roi_frames) + " ROI images, " +
         std::to_string(r.pnp_failures) + " pose failures");
    Check(dfx_dataset_append(ds.get(), r.video_id, r.values,
                             DFX_VIDEO_FEATURE_COUNT, label));
    ++ok;
  }
  if (ok == 0) DataFailure("every bundle failed");
  const fs::path out(a.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  Check(dfx_dataset_write_feature_csv(ds.get(), a.out.c_str()));
  manifest.AddOutput(a.out);
  manifest.Write(c.manifest.empty() ? a.out + ".manifest.json" : c.manifest,
                 c.seed);
  Info("wrote " + std::to_string(ok) + " of " + std::to_string(files.size()) +
       " rows to " + a.out);
  return 0;
}

struct ExtractAudioArgs {
  std::string wavs, out_dir, labels;
  bool render = false;
  dfx_mel_options mel{};
};

int RunExtractAudio(const ExtractAudioArgs& a, const Common& c,
                    const CLI::App* sub) {
  Manifest manifest("extract-audio", sub);
  const std::vector<fs::path> files = ListFiles(a.wavs, ".wav");
  if (files.empty()) DataFailure("no *.wav files in " + a.wavs);
  std::map<std::string, int> labels;
  if (!a.labels.empty()) {
    labels = ReadLabels(a.labels);
    manifest.AddInput(a.labels);
  }
  manifest.AddInput(a.wavs);
  fs::create_directories(a.out_dir);

  std::vector<std::string> ids, paths;
  std::vector<dfx_audio_index_entry> entries;
  ids.reserve(files.size());
  paths.reserve(files.size());
  for (const fs::path& f : files) {
    const std::string id = f.stem().string();
    dfx_matrix* raw = nullptr;
    if (dfx_mel_spectrogram_from_wav(f.string().c_str(), &a.mel, &raw) != DFX_OK) {
      std::cerr << "[error] " << f.generic_string() << ": " << dfx_last_error()
                << " (skipped)\n";
      continue;
    }
    MatrixPtr m(raw);
    const std::string name = id + ".dfsm";
    const std::string out = (fs::path(a.out_dir) / name).string();
    Check(dfx_matrix_write(m.get(), out.c_str()));
    manifest.AddOutput(out);
    if (a.render) {
      const std::string pgm = (fs::path(a.out_dir) / (id + ".pgm")).string();
      Check(dfx_matrix_render_pgm(m.get(), a.mel.floor_db, pgm.c_str()));
      manifest.AddOutput(pgm);
    }
    int label = DFX_NO_LABEL;
    if (!a.labels.empty()) {
      const auto it = labels.find(id);
      if (it == labels.end()) {
        std::cerr << "[warning] " << id << ": no label in " << a.labels << "\n";
      } else {
        label = it->second;
      }
    }
    ids.push_back(id);
    paths.push_back(name);
    entries.push_back({nullptr, nullptr, label, dfx_matrix_rows(m.get()),
                       dfx_matrix_cols(m.get())});
  }
  if (entries.empty()) DataFailure("every clip failed");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i].clip_id = ids[i].c_str();
    entries[i].path = paths[i].c_str();
  }
  const std::string index = (fs::path(a.out_dir) / "index.csv").string();
  Check(dfx_write_audio_index(index.c_str(), entries.data(), entries.size()));
  manifest.AddOutput(index);
  manifest.Write(DefaultManifest(c.manifest, a.out_dir), c.seed);
  Info("wrote " + std::to_string(entries.size()) + " spectrograms to " +
       a.out_dir);
  return 0;
}

struct TrainArgs {
  std::string kind = "ann";
  DataOptions data;
  std::string out_dir;
  double ratio = 0.8;
  int smote_k = 5;
  bool no_smote = false;
  std::vector<std::size_t> hidden{64, 32};
  std::vector<std::size_t> filters{8, 16};
  std::size_t dense = 64;
  double dropout = 0.3;
  std::size_t batch = 0;
  double lr = 0.0;
  double momentum = -1.0;
  int epochs = 0;
  int max_depth = 8;
  std::size_t min_split = 2;
  std::size_t max_features = 0;
  std::size_t trees = 100;
  bool no_bootstrap = false;
};

int RunTrain(const TrainArgs& a, const Common& c, const CLI::App* sub) {
  Manifest manifest("train", sub);
  dfx_model_kind kind;
  Check(dfx_model_kind_parse(a.kind.c_str(), &kind));
  const bool cnn = kind == DFX_MODEL_CNN;
  DatasetPtr all = LoadData(a.data, cnn);
  manifest.AddInput(a.data.path);

  dfx_dataset* train_raw = nullptr;
  dfx_dataset* test_raw = nullptr;
  Check(dfx_dataset_split(all.get(), a.ratio, c.seed, &train_raw, &test_raw));
  DatasetPtr train(train_raw), test(test_raw);
  size_t counts[2];
  Check(dfx_dataset_class_counts(train.get(), counts));
  Info("train rows: " + std::to_string(counts[0]) + " real, " +
       std::to_string(counts[1]) + " deepfake; test rows: " +
       std::to_string(dfx_dataset_size(test.get())));
  if (!cnn && !a.no_smote && std::min(counts[0], counts[1]) < 2) {
    std::cerr << "[warning] SMOTE skipped: the minority class has fewer than "
                 "2 training rows\n";
  } else if (!cnn && !a.no_smote && counts[0] != counts[1]) {
    dfx_dataset* balanced = nullptr;
    Check(dfx_dataset_smote(train.get(), a.smote_k, c.seed + 1, &balanced));
    train.reset(balanced);
    Info("SMOTE: training rows now " +
         std::to_string(dfx_dataset_size(train.get())));
  }

  dfx_train_options o;
  dfx_train_options_default(kind, &o);
  o.seed = c.seed;
  if (a.hidden.size() > DFX_MAX_LAYERS || a.filters.size() > DFX_MAX_LAYERS) {
    throw Failure{1, "too many layers"};
  }
  o.hidden_count = a.hidden.size();
  std::copy(a.hidden.begin(), a.hidden.end(), o.hidden);
  o.conv_count = a.filters.size();
  std::copy(a.filters.begin(), a.filters.end(), o.conv_filters);
  o.dense_units = a.dense;
  o.dropout = a.dropout;
  if (a.batch > 0) o.batch_size = a.batch;
  if (a.lr > 0.0) o.learning_rate = a.lr;
  if (a.momentum >= 0.0) o.momentum = a.momentum;
  if (a.epochs > 0) o.epochs = a.epochs;
  o.max_depth = a.max_depth;
  o.min_samples_split = a.min_split;
  o.max_features = a.max_features;
  o.n_estimators = a.trees;
  o.bootstrap = a.no_bootstrap ? 0 : 1;

  dfx_model* model_raw = nullptr;
  Check(dfx_model_train(kind, train.get(), &o, &model_raw));
  ModelPtr model(model_raw);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const std::string model_path = (dir / "model.json").string();
  const std::string history_path = (dir / "history.csv").string();
  Check(dfx_model_save(model.get(), model_path.c_str()));
  Check(dfx_model_write_history(model.get(), history_path.c_str()));
  std::string test_path;
  if (IsAudioIndex(a.data.path)) {
    test_path = (dir / "test_index.csv").string();
    Check(dfx_audio_index_filter(a.data.path.c_str(), test.get(),
                                 test_path.c_str()));
  } else {
    test_path = (dir / "test.csv").string();
    Check(dfx_dataset_write_feature_csv(test.get(), test_path.c_str()));
  }
  const dfx_report r = Evaluate(model.get(), test.get());
  const std::string text = ReportText(r);
  WriteText((dir / "report.txt").string(), text);
  WriteText((dir / "report.json").string(), ReportJson(r).dump(2) + "\n");
  std::cout << a.kind << " test report\n" << text;
  for (const std::string& p :
       {model_path, history_path, test_path, (dir / "report.txt").string(),
        (dir / "report.json").string()}) {
    manifest.AddOutput(p);
  }
  manifest.Write(DefaultManifest(c.manifest, dir), c.seed);
  return 0;
}

struct EvaluateArgs {
  std::string model;
  DataOptions data;
  std::string out_json, out_text;
};

ModelPtr LoadModel(const std::string& path) {
  dfx_model* raw = nullptr;
  Check(dfx_model_load(path.c_str(), &raw));
  return ModelPtr(raw);
}

int RunEvaluate(const EvaluateArgs& a, const Common& c, const CLI::App* sub) {
  Manifest manifest("evaluate", sub);
  ModelPtr model = LoadModel(a.model);
  DatasetPtr ds = LoadData(a.data, dfx_model_get_kind(model.get()) == DFX_MODEL_CNN);
  manifest.AddInput(a.model);
  manifest.AddInput(a.data.path);
  const dfx_report r = Evaluate(model.get(), ds.get());
  const std::string text = ReportText(r);
  std::cout << text;
  if (!a.out_text.empty()) {
    WriteText(a.out_text, text);
    manifest.AddOutput(a.out_text);
  }
  if (!a.out_json.empty()) {
    WriteText(a.out_json, ReportJson(r).dump(2) + "\n");
    manifest.AddOutput(a.out_json);
  }
  if (!c.manifest.empty()) manifest.Write(c.manifest, c.seed);
  return 0;
}

struct AssembleArgs {
  std::string videos, audio, out;
};

int RunAssemble(const AssembleArgs& a, const Common& c, const CLI::App* sub) {
  Manifest manifest("assemble", sub);
  DatasetPtr v = LoadData({a.videos}, false);
  DatasetPtr au = LoadData({a.audio}, false);
  manifest.AddInput(a.videos);
  manifest.AddInput(a.audio);
  auto collect = [](const dfx_dataset* ds, std::vector<const char*>& ids,
                    std::vector<int>& labels) {
    labels = Labels(ds);
    for (std::size_t i = 0; i < dfx_dataset_size(ds); ++i) {
      ids.push_back(dfx_dataset_id(ds, i));
    }
  };
  std::vector<const char*> vid, aid;
  std::vector<int> vl, al;
  collect(v.get(), vid, vl);
  collect(au.get(), aid, al);
  dfx_pairing* raw = nullptr;
  Check(dfx_assemble_fourway(vid.data(), vl.data(), vid.size(), aid.data(),
                             al.data(), aid.size(), c.seed, &raw));
  PairingPtr pairs(raw);
  const fs::path out(a.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  Check(dfx_pairing_write_csv(pairs.get(), a.out.c_str()));
  manifest.AddOutput(a.out);
  manifest.Write(c.manifest.empty() ? a.out + ".manifest.json" : c.manifest,
                 c.seed);
  Info("wrote " + std::to_string(dfx_pairing_size(pairs.get())) +
       " pairings to " + a.out);
  return 0;
}

struct FuseArgs {
  std::string video_model, audio_model, pairs, out_dir;
  DataOptions video_data, audio_data;
};

int RunFuse(const FuseArgs& a, const Common& c, const CLI::App* sub) {
  Manifest manifest("fuse", sub);
  ModelPtr vm = LoadModel(a.video_model);
  ModelPtr am = LoadModel(a.audio_model);
  DatasetPtr vd = LoadData(a.video_data, dfx_model_get_kind(vm.get()) == DFX_MODEL_CNN);
  DatasetPtr ad = LoadData(a.audio_data, dfx_model_get_kind(am.get()) == DFX_MODEL_CNN);
  for (const std::string& p : {a.video_model, a.audio_model, a.video_data.path,
                               a.audio_data.path, a.pairs}) {
    manifest.AddInput(p);
  }
  dfx_pairing* raw = nullptr;
  Check(dfx_pairing_read_csv(a.pairs.c_str(), &raw));
  PairingPtr pairs(raw);

  auto ids = [](const dfx_dataset* ds) {
    std::vector<const char*> out;
    for (std::size_t i = 0; i < dfx_dataset_size(ds); ++i) {
      out.push_back(dfx_dataset_id(ds, i));
    }
    return out;
  };
  const std::vector<const char*> vid = ids(vd.get()), aid = ids(ad.get());
  const std::vector<double> vp = Predict(vm.get(), vd.get());
  const std::vector<double> ap = Predict(am.get(), ad.get());
  dfx_fourway* rep = nullptr;
  Check(dfx_evaluate_fourway(pairs.get(), vid.data(), vp.data(), vid.size(),
                             aid.data(), ap.data(), aid.size(), &rep));
  FourwayPtr report(rep);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const std::string csv = (dir / "fourway.csv").string();
  const std::string json = (dir / "fourway.json").string();
  const std::string verdicts = (dir / "verdicts.csv").string();
  Check(dfx_fourway_write_csv(report.get(), csv.c_str()));
  Check(dfx_fourway_write_json(report.get(), json.c_str()));
  Check(dfx_fourway_write_verdicts(report.get(), verdicts.c_str()));
  std::cout << dfx_fourway_table(report.get());
  for (const std::string& p : {csv, json, verdicts}) manifest.AddOutput(p);
  manifest.Write(DefaultManifest(c.manifest, dir), c.seed);
  return 0;
}

struct ImportanceArgs {
  std::string model;
  DataOptions data;
  std::string out;
  int repeats = 10;
};

int RunImportance(const ImportanceArgs& a, const Common& c,
                  const CLI::App* sub) {
  Manifest manifest("importance", sub);
  ModelPtr model = LoadModel(a.model);
  if (dfx_model_get_kind(model.get()) == DFX_MODEL_CNN) {
    DataFailure("importance needs an ann, tree or forest model");
  }
  DatasetPtr ds = LoadData(a.data, false);
  manifest.AddInput(a.model);
  manifest.AddInput(a.data.path);
  std::vector<dfx_importance> scores(dfx_dataset_dims(ds.get()));
  std::size_t count = 0;
  Check(dfx_permutation_importance(model.get(), ds.get(), a.repeats, c.seed,
                                   scores.data(), scores.size(), &count));
  std::ostringstream csv;
  csv << "rank,feature,index,mean_drop,std_drop\n";
  char line[160];
  std::snprintf(line, sizeof line, "%4s  %-22s %10s %10s\n", "rank", "feature",
                "mean_drop", "std_drop");
  std::cout << line;
  for (std::size_t i = 0; i < count; ++i) {
    const dfx_importance& s = scores[i];
    char a1[32], a2[32];
    std::snprintf(a1, sizeof a1, "%.17g", s.mean_drop);
    std::snprintf(a2, sizeof a2, "%.17g", s.std_drop);
    csv << i + 1 << ',' << s.name << ',' << s.index << ',' << a1 << ',' << a2
        << '\n';
    std::snprintf(line, sizeof line, "%4zu  %-22s %10.4f %10.4f\n", i + 1,
                  s.name, s.mean_drop, s.std_drop);
    std::cout << line;
  }
  if (!a.out.empty()) {
    WriteText(a.out, csv.str());
    manifest.AddOutput(a.out);
    manifest.Write(c.manifest.empty() ? a.out + ".manifest.json" : c.manifest,
                   c.seed);
  }
  return 0;
}

void AddDataOptions(CLI::App* sub, DataOptions& d, const std::string& flag,
                    const std::string& what) {
  sub->add_option(flag, d.path, what)->required()->check(CLI::ExistingFile);
  sub->add_option("--frames", d.frames,
                  "CNN input width: spectrograms are center-cropped or padded "
                  "to this many frames")
      ->check(CLI::PositiveNumber);
  sub->add_option("--pad-db", d.pad_db, "fill value for padded frames");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dfusion: multimodal deepfake detection toolkit"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "key = value config file ([section] per subcommand)");
  app.set_version_flag("--version", std::string(dfx_version()));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "seed for every random choice");
    sub->add_option("--manifest", common.manifest,
                    "run manifest path (default next to the outputs)");
  };

  ExtractVideoArgs ev;
  dfx_video_options_default(&ev.video);
  auto* s_ev = app.add_subcommand("extract-video",
                                  "landmark bundles -> 13-feature CSV");
  s_ev->add_option("--bundles", ev.bundles, "directory of bundle JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  s_ev->add_option("--out", ev.out, "feature CSV to write")->required();
  s_ev->add_option("--labels", ev.labels, "id,label CSV")->check(CLI::ExistingFile);
  s_ev->add_option("--jobs", ev.jobs, "parallel extraction workers")
      ->check(CLI::PositiveNumber);
  s_ev->add_option("--stride", ev.video.stride, "use every n-th bundle frame")
      ->check(CLI::PositiveNumber);
  s_ev->add_option("--blink-threshold", ev.video.blink_threshold);
  s_ev->add_option("--blink-frames", ev.video.blink_min_frames)
      ->check(CLI::PositiveNumber);
  s_ev->add_option("--gray-levels", ev.video.gray_levels)
      ->check(CLI::Range(2, 256));
  s_ev->add_option("--max-reprojection", ev.video.pnp_max_rms_px,
                   "reject head poses with a larger RMS error (px)");
  add_common(s_ev);

  ExtractAudioArgs ea;
  dfx_mel_options_default(&ea.mel);
  auto* s_ea = app.add_subcommand("extract-audio",
                                  "WAV clips -> mel-spectrogram matrices");
  s_ea->add_option("--wavs", ea.wavs, "directory of WAV files")
      ->required()
      ->check(CLI::ExistingDirectory);
  s_ea->add_option("--out-dir", ea.out_dir, "matrix + index.csv directory")
      ->required();
  s_ea->add_option("--labels", ea.labels, "id,label CSV")->check(CLI::ExistingFile);
  s_ea->add_flag("--render-pgm", ea.render, "also write a PGM image per clip");
  s_ea->add_option("--sample-rate", ea.mel.sample_rate)->check(CLI::PositiveNumber);
  s_ea->add_option("--frame-size", ea.mel.frame_size)->check(CLI::PositiveNumber);
  s_ea->add_option("--hop", ea.mel.hop)->check(CLI::PositiveNumber);
  s_ea->add_option("--bands", ea.mel.n_bands)->check(CLI::PositiveNumber);
  s_ea->add_option("--fmin", ea.mel.fmin);
  s_ea->add_option("--fmax", ea.mel.fmax, "0 means half the sample rate");
  s_ea->add_option("--floor-db", ea.mel.floor_db);
  s_ea->add_option("--db-before-mel", ea.mel.db_before_mel,
                   "1: convert to dB before the mel projection");
  s_ea->add_option("--unit-reference", ea.mel.unit_reference,
                   "1: 0 dB at unit power instead of the clip maximum");
  add_common(s_ea);

  TrainArgs tr;
  auto* s_tr = app.add_subcommand("train", "train a classifier");
  s_tr->add_option("--kind", tr.kind, "ann, cnn, tree or forest")
      ->check(CLI::IsMember({"ann", "cnn", "tree", "forest"}));
  AddDataOptions(s_tr, tr.data, "--data",
                 "feature CSV or spectrogram index.csv");
  s_tr->add_option("--out-dir", tr.out_dir)->required();
  s_tr->add_option("--ratio", tr.ratio, "training share of the split")
      ->check(CLI::Range(0.0, 1.0));
  s_tr->add_option("--smote-k", tr.smote_k)->check(CLI::PositiveNumber);
  s_tr->add_flag("--no-smote", tr.no_smote, "skip minority oversampling");
  s_tr->add_option("--hidden", tr.hidden, "ANN hidden widths")->delimiter(',');
  s_tr->add_option("--filters", tr.filters, "CNN conv widths")->delimiter(',');
  s_tr->add_option("--dense", tr.dense, "CNN dense width");
  s_tr->add_option("--dropout", tr.dropout)->check(CLI::Range(0.0, 0.95));
  s_tr->add_option("--batch", tr.batch, "0 keeps the kind's default");
  s_tr->add_option("--lr", tr.lr, "0 keeps the kind's default");
  s_tr->add_option("--momentum", tr.momentum, "negative keeps the default");
  s_tr->add_option("--epochs", tr.epochs, "0 keeps the kind's default");
  s_tr->add_option("--max-depth", tr.max_depth);
  s_tr->add_option("--min-split", tr.min_split);
  s_tr->add_option("--max-features", tr.max_features,
                   "0: all (tree), floor(sqrt(d)) (forest)");
  s_tr->add_option("--trees", tr.trees)->check(CLI::PositiveNumber);
  s_tr->add_flag("--no-bootstrap", tr.no_bootstrap);
  add_common(s_tr);

  EvaluateArgs evl;
  auto* s_evl = app.add_subcommand("evaluate", "classification report");
  s_evl->add_option("--model", evl.model)->required()->check(CLI::ExistingFile);
  AddDataOptions(s_evl, evl.data, "--data", "labeled feature CSV or index.csv");
  s_evl->add_option("--out-json", evl.out_json);
  s_evl->add_option("--out-text", evl.out_text);
  add_common(s_evl);

  AssembleArgs as;
  auto* s_as = app.add_subcommand(
      "assemble", "pair videos with audio clips into four balanced categories");
  s_as->add_option("--videos", as.videos, "labeled feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  s_as->add_option("--audio", as.audio, "labeled spectrogram index.csv")
      ->required()
      ->check(CLI::ExistingFile);
  s_as->add_option("--out", as.out, "pairing manifest CSV")->required();
  add_common(s_as);

  FuseArgs fu;
  auto* s_fu = app.add_subcommand("fuse", "OR-fuse both modalities per pair");
  s_fu->add_option("--video-model", fu.video_model)->required()->check(CLI::ExistingFile);
  s_fu->add_option("--audio-model", fu.audio_model)->required()->check(CLI::ExistingFile);
  s_fu->add_option("--video-data", fu.video_data.path)->required()->check(CLI::ExistingFile);
  s_fu->add_option("--audio-data", fu.audio_data.path)->required()->check(CLI::ExistingFile);
  s_fu->add_option("--frames", fu.audio_data.frames, "CNN input width")
      ->check(CLI::PositiveNumber);
  s_fu->add_option("--pairs", fu.pairs, "pairing manifest from assemble")
      ->required()
      ->check(CLI::ExistingFile);
  s_fu->add_option("--out-dir", fu.out_dir)->required();
  add_common(s_fu);

  ImportanceArgs im;
  auto* s_im = app.add_subcommand("importance", "permutation feature importance");
  s_im->add_option("--model", im.model)->required()->check(CLI::ExistingFile);
  AddDataOptions(s_im, im.data, "--data", "labeled feature CSV");
  s_im->add_option("--repeats", im.repeats)->check(CLI::PositiveNumber);
  s_im->add_option("--out", im.out, "ranked CSV");
  add_common(s_im);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*s_ev) return RunExtractVideo(ev, common, s_ev);
    if (*s_ea) return RunExtractAudio(ea, common, s_ea);
    if (*s_tr) return RunTrain(tr, common, s_tr);
    if (*s_evl) return RunEvaluate(evl, common, s_evl);
    if (*s_as) return RunAssemble(as, common, s_as);
    if (*s_fu) return RunFuse(fu, common, s_fu);
    if (*s_im) return RunImportance(im, common, s_im);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
