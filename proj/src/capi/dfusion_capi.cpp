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

#include "dfusion/dfusion.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <set>
#include <string>

#include "audio/matrix.hpp"
#include "audio/mel.hpp"
#include "core/bundle_io.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/log.hpp"
#include "core/wav_io.hpp"
#include "extract/audio_features.hpp"
#include "extract/video_features.hpp"
#include "fusion/fusion.hpp"
#include "learn/metrics.hpp"
#include "learn/model.hpp"
#include "learn/sampling.hpp"

using namespace dfusion;

struct dfx_dataset {
  Dataset data;
};
struct dfx_matrix {
  Matrix m;
};
struct dfx_model {
  Model model;
};
struct dfx_pairing {
  std::vector<Pairing> pairs;
};
struct dfx_fourway {
  FourwayReport report;
  std::string table;
};

namespace {

thread_local std::string g_last_error;

dfx_status Fail(dfx_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
dfx_status Guard(F&& body) {
  try {
    body();
    return DFX_OK;
  } catch (const Error& e) {
    return Fail(static_cast<dfx_status>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DFX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(DFX_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

std::string Str(const char* s, const char* what) {
  Require(s != nullptr, what);
  return s;
}

void CopyId(const std::string& id, char* dst, std::size_t capacity) {
  if (id.size() + 1 > capacity) {
    throw InvalidArgument("id '" + id + "' exceeds " +
                          std::to_string(capacity - 1) + " characters");
  }
  std::memcpy(dst, id.c_str(), id.size() + 1);
}

}  // namespace

extern "C" {

const char* dfx_version(void) { return DFUSION_VERSION; }

const char* dfx_last_error(void) { return g_last_error.c_str(); }

void dfx_set_log_callback(dfx_log_fn fn, void* user) {
  if (fn == nullptr) {
    SetLogSink(nullptr);
    return;
  }
  SetLogSink([fn, user](LogLevel level, std::string_view message) {
    const std::string text(message);
    fn(static_cast<int>(level), text.c_str(), user);
  });
}

// ---------------------------------------------------------------- datasets

dfx_status dfx_dataset_create(size_t dims, dfx_dataset** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Require(dims > 0, "dims must be positive");
    auto ds = std::make_unique<dfx_dataset>();
    if (dims == kVideoFeatureCount) {
      ds->data.feature_names.assign(kVideoFeatureNames.begin(),
                                    kVideoFeatureNames.end());
    } else {
      for (std::size_t j = 0; j < dims; ++j) {
        ds->data.feature_names.push_back("f" + std::to_string(j));
      }
    }
    *out = ds.release();
  });
}

dfx_status dfx_dataset_append(dfx_dataset* ds, const char* id,
                              const double* row, size_t dims, int label) {
  return Guard([&] {
    Require(ds != nullptr && row != nullptr, "NULL dataset or row");
    const std::string key = Str(id, "id is NULL");
    Require(dims == ds->data.feature_names.size(), "row width mismatch");
    Require(label == 0 || label == 1 || label == DFX_NO_LABEL,
            "label must be 0, 1 or DFX_NO_LABEL");
    for (const std::string& existing : ds->data.ids) {
      if (existing == key) throw DataError("duplicate id '" + key + "'");
    }
    ds->data.Add(key, std::vector<double>(row, row + dims), label);
  });
}

dfx_status dfx_dataset_read_feature_csv(const char* path, dfx_dataset** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    auto ds = std::make_unique<dfx_dataset>();
    ds->data = ToDataset(ReadFeatureCsv(Str(path, "path is NULL")));
    *out = ds.release();
  });
}

dfx_status dfx_dataset_write_feature_csv(const dfx_dataset* ds,
                                         const char* path) {
  return Guard([&] {
    Require(ds != nullptr, "dataset is NULL");
    WriteFeatureCsv(ToFeatureRows(ds->data), Str(path, "path is NULL"));
  });
}

dfx_status dfx_dataset_read_audio_index(const char* index_path,
                                        dfx_audio_form form, size_t frames,
                                        double pad_db, dfx_dataset** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Require(form == DFX_AUDIO_SPECTROGRAM || form == DFX_AUDIO_BAND_MEANS,
            "unknown audio form");
    Require(form != DFX_AUDIO_SPECTROGRAM || frames > 0, "frames must be > 0");
    auto ds = std::make_unique<dfx_dataset>();
    ds->data = LoadAudioDataset(
        ReadAudioIndex(Str(index_path, "path is NULL")),
        form == DFX_AUDIO_SPECTROGRAM ? AudioForm::kSpectrogram
                                      : AudioForm::kBandMeans,
        frames, pad_db);
    *out = ds.release();
  });
}

dfx_status dfx_audio_index_filter(const char* index_path,
                                  const dfx_dataset* keep,
                                  const char* out_path) {
  return Guard([&] {
    Require(keep != nullptr, "dataset is NULL");
    const std::string dst = Str(out_path, "out_path is NULL");
    std::vector<AudioIndexEntry> entries =
        ReadAudioIndex(Str(index_path, "index_path is NULL"));
    const std::set<std::string> ids(keep->data.ids.begin(),
                                    keep->data.ids.end());
    std::filesystem::path base = std::filesystem::path(dst).parent_path();
    if (base.empty()) base = ".";
    std::vector<AudioIndexEntry> kept;
    for (AudioIndexEntry& e : entries) {
      if (ids.count(e.clip_id) == 0) continue;
      e.path = std::filesystem::relative(std::filesystem::absolute(e.path),
                                         std::filesystem::absolute(base))
                   .generic_string();
      kept.push_back(std::move(e));
    }
    WriteAudioIndex(kept, dst);
  });
}

size_t dfx_dataset_size(const dfx_dataset* ds) {
  return ds ? ds->data.size() : 0;
}

size_t dfx_dataset_dims(const dfx_dataset* ds) {
  if (ds == nullptr) return 0;
  return ds->data.empty() ? ds->data.feature_names.size() : ds->data.dims();
}

void dfx_dataset_shape(const dfx_dataset* ds, size_t* rows, size_t* cols) {
  if (rows) *rows = ds ? ds->data.shape[0] : 0;
  if (cols) *cols = ds ? ds->data.shape[1] : 0;
}

dfx_status dfx_dataset_class_counts(const dfx_dataset* ds, size_t counts[2]) {
  return Guard([&] {
    Require(ds != nullptr && counts != nullptr, "NULL argument");
    const auto c = ds->data.ClassCounts();
    counts[0] = c[0];
    counts[1] = c[1];
  });
}

const char* dfx_dataset_id(const dfx_dataset* ds, size_t i) {
  if (ds == nullptr || i >= ds->data.size()) return nullptr;
  return ds->data.ids[i].c_str();
}

int dfx_dataset_label(const dfx_dataset* ds, size_t i) {
  if (ds == nullptr || i >= ds->data.size()) return DFX_NO_LABEL;
  return ds->data.labels[i];
}

const char* dfx_dataset_feature_name(const dfx_dataset* ds, size_t j) {
  if (ds == nullptr || j >= ds->data.feature_names.size()) return nullptr;
  return ds->data.feature_names[j].c_str();
}

dfx_status dfx_dataset_row(const dfx_dataset* ds, size_t i, double* out,
                           size_t capacity) {
  return Guard([&] {
    Require(ds != nullptr && out != nullptr, "NULL argument");
    Require(i < ds->data.size(), "row index out of range");
    const auto& row = ds->data.rows[i];
    Require(capacity >= row.size(), "output buffer too small");
    std::copy(row.begin(), row.end(), out);
  });
}

dfx_status dfx_dataset_split(const dfx_dataset* ds, double ratio,
                             uint64_t seed, dfx_dataset** train,
                             dfx_dataset** test) {
  return Guard([&] {
    Require(ds != nullptr && train != nullptr && test != nullptr,
            "NULL argument");
    SeededRng rng(seed);
    Split split = TrainTestSplit(ds->data, ratio, rng);
    auto a = std::make_unique<dfx_dataset>();
    auto b = std::make_unique<dfx_dataset>();
    a->data = std::move(split.train);
    b->data = std::move(split.test);
    *train = a.release();
    *test = b.release();
  });
}

dfx_status dfx_dataset_smote(const dfx_dataset* ds, int k, uint64_t seed,
                             dfx_dataset** out) {
  return Guard([&] {
    Require(ds != nullptr && out != nullptr, "NULL argument");
    SeededRng rng(seed);
    auto result = std::make_unique<dfx_dataset>();
    result->data = Smote(ds->data, k, rng).data;
    *out = result.release();
  });
}

void dfx_dataset_destroy(dfx_dataset* ds) { delete ds; }

// ----------------------------------------------------------------- bundles

dfx_status dfx_validate_bundle(const char* path) {
  return Guard([&] { ReadLandmarkBundle(Str(path, "path is NULL")); });
}

// ---------------------------------------------------------- video features

void dfx_video_options_default(dfx_video_options* opts) {
  if (opts == nullptr) return;
  const VideoExtractOptions d;
  opts->stride = d.stride;
  opts->blink_threshold = d.blink.threshold;
  opts->blink_min_frames = d.blink.min_closed_frames;
  opts->gray_levels = d.texture.gray_levels;
  opts->pnp_max_rms_px = d.pnp.max_rms_px;
}

const char* dfx_video_feature_name(size_t index) {
  if (index >= kVideoFeatureCount) return nullptr;
  return kVideoFeatureNames[index].data();
}

dfx_status dfx_extract_video_features(const char* bundle_path,
                                      const dfx_video_options* opts,
                                      dfx_video_result* out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    VideoExtractOptions o;
    if (opts != nullptr) {
      o.stride = opts->stride;
      o.blink.threshold = opts->blink_threshold;
      o.blink.min_closed_frames = opts->blink_min_frames;
      o.texture.gray_levels = opts->gray_levels;
      o.pnp.max_rms_px = opts->pnp_max_rms_px;
    }
    const LandmarkBundle bundle =
        ReadLandmarkBundle(Str(bundle_path, "bundle_path is NULL"));
    const VideoExtraction x = ExtractVideoFeatures(bundle, o);
    for (const std::string& note : x.notes) {
      LogWarning(bundle.video_id + ": " + note);
    }
    dfx_video_result r{};
    CopyId(x.features.video_id, r.video_id, DFX_ID_CAPACITY);
    std::copy(x.features.values.begin(), x.features.values.end(), r.values);
    r.sampled_frames = x.sampled_frames;
    r.roi_frames = x.roi_frames;
    r.pnp_failures = x.pnp_failures;
    r.kite_failures = x.kite_failures;
    r.degenerate_blocks = x.degenerate_blocks;
    r.correlation_substituted = x.correlation_substituted ? 1 : 0;
    *out = r;
  });
}

// ------------------------------------------------------------------- audio

void dfx_mel_options_default(dfx_mel_options* opts) {
  if (opts == nullptr) return;
  const MelParams d;
  opts->sample_rate = d.sample_rate;
  opts->frame_size = d.frame_size;
  opts->hop = d.hop;
  opts->n_bands = d.n_bands;
  opts->fmin = d.fmin;
  opts->fmax = d.fmax;
  opts->floor_db = d.floor_db;
  opts->db_before_mel = d.order == MelOrder::kDbThenMel ? 1 : 0;
  opts->unit_reference = d.reference == DbReference::kUnit ? 1 : 0;
}

dfx_status dfx_mel_spectrogram_from_wav(const char* wav_path,
                                        const dfx_mel_options* opts,
                                        dfx_matrix** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    MelParams p;
    if (opts != nullptr) {
      p.sample_rate = opts->sample_rate;
      p.frame_size = opts->frame_size;
      p.hop = opts->hop;
      p.n_bands = opts->n_bands;
      p.fmin = opts->fmin;
      p.fmax = opts->fmax;
      p.floor_db = opts->floor_db;
      p.order = opts->db_before_mel ? MelOrder::kDbThenMel : MelOrder::kMelThenDb;
      p.reference = opts->unit_reference ? DbReference::kUnit : DbReference::kMax;
    }
    const AudioClip clip = ReadWav(Str(wav_path, "wav_path is NULL"));
    auto m = std::make_unique<dfx_matrix>();
    m->m = ComputeMelSpectrogram(clip, p).db;
    *out = m.release();
  });
}

size_t dfx_matrix_rows(const dfx_matrix* m) { return m ? m->m.rows : 0; }
size_t dfx_matrix_cols(const dfx_matrix* m) { return m ? m->m.cols : 0; }
const double* dfx_matrix_data(const dfx_matrix* m) {
  return m ? m->m.data.data() : nullptr;
}

dfx_status dfx_matrix_write(const dfx_matrix* m, const char* path) {
  return Guard([&] {
    Require(m != nullptr, "matrix is NULL");
    WriteMatrix(m->m, Str(path, "path is NULL"));
  });
}

dfx_status dfx_matrix_read(const char* path, dfx_matrix** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    auto m = std::make_unique<dfx_matrix>();
    m->m = ReadMatrix(Str(path, "path is NULL"));
    *out = m.release();
  });
}

dfx_status dfx_matrix_render_pgm(const dfx_matrix* m, double floor_db,
                                 const char* path) {
  return Guard([&] {
    Require(m != nullptr, "matrix is NULL");
    RenderPgm(m->m, floor_db, Str(path, "path is NULL"));
  });
}

void dfx_matrix_destroy(dfx_matrix* m) { delete m; }

dfx_status dfx_write_audio_index(const char* path,
                                 const dfx_audio_index_entry* entries,
                                 size_t count) {
  return Guard([&] {
    Require(entries != nullptr || count == 0, "entries is NULL");
    std::vector<AudioIndexEntry> rows;
    for (std::size_t i = 0; i < count; ++i) {
      const dfx_audio_index_entry& e = entries[i];
      AudioIndexEntry r;
      r.clip_id = Str(e.clip_id, "clip_id is NULL");
      r.path = Str(e.path, "path is NULL");
      Require(e.label == 0 || e.label == 1 || e.label == DFX_NO_LABEL,
              "label must be 0, 1 or DFX_NO_LABEL");
      if (e.label != DFX_NO_LABEL) r.label = e.label;
      r.rows = e.rows;
      r.cols = e.cols;
      rows.push_back(std::move(r));
    }
    WriteAudioIndex(rows, Str(path, "path is NULL"));
  });
}

// ------------------------------------------------------------------ models

const char* dfx_model_kind_name(dfx_model_kind kind) {
  switch (kind) {
    case DFX_MODEL_ANN:
      return "ann";
    case DFX_MODEL_CNN:
      return "cnn";
    case DFX_MODEL_TREE:
      return "tree";
    case DFX_MODEL_FOREST:
      return "forest";
  }
  return nullptr;
}

dfx_status dfx_model_kind_parse(const char* name, dfx_model_kind* out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    *out = static_cast<dfx_model_kind>(ParseKind(Str(name, "name is NULL")));
  });
}

void dfx_train_options_default(dfx_model_kind kind, dfx_train_options* opts) {
  if (opts == nullptr) return;
  *opts = dfx_train_options{};
  opts->seed = 0;
  const AnnConfig ann;
  const CnnConfig cnn;
  const ForestConfig forest;
  opts->hidden_count = ann.hidden.size();
  std::copy(ann.hidden.begin(), ann.hidden.end(), opts->hidden);
  opts->conv_count = cnn.conv_filters.size();
  std::copy(cnn.conv_filters.begin(), cnn.conv_filters.end(),
            opts->conv_filters);
  opts->dense_units = cnn.dense_units;
  opts->dropout = cnn.dropout;
  const bool is_cnn = kind == DFX_MODEL_CNN;
  opts->batch_size = is_cnn ? cnn.batch_size : ann.batch_size;
  opts->learning_rate = is_cnn ? cnn.learning_rate : ann.learning_rate;
  opts->momentum = is_cnn ? cnn.momentum : ann.momentum;
  opts->epochs = is_cnn ? cnn.epochs : ann.epochs;
  opts->max_depth = forest.tree.max_depth;
  opts->min_samples_split = forest.tree.min_samples_split;
  opts->max_features = 0;
  opts->n_estimators = forest.n_estimators;
  opts->bootstrap = forest.bootstrap ? 1 : 0;
}

dfx_status dfx_model_train(dfx_model_kind kind, const dfx_dataset* train,
                           const dfx_train_options* opts, dfx_model** out) {
  return Guard([&] {
    Require(train != nullptr && out != nullptr, "NULL argument");
    dfx_train_options o;
    if (opts != nullptr) {
      o = *opts;
    } else {
      dfx_train_options_default(kind, &o);
    }
    Require(o.hidden_count <= DFX_MAX_LAYERS && o.conv_count <= DFX_MAX_LAYERS,
            "too many layers");
    TrainOptions t;
    t.ann.hidden.assign(o.hidden, o.hidden + o.hidden_count);
    t.ann.batch_size = o.batch_size;
    t.ann.learning_rate = o.learning_rate;
    t.ann.momentum = o.momentum;
    t.ann.epochs = o.epochs;
    t.cnn.conv_filters.assign(o.conv_filters, o.conv_filters + o.conv_count);
    t.cnn.dense_units = o.dense_units;
    t.cnn.dropout = o.dropout;
    t.cnn.batch_size = o.batch_size;
    t.cnn.learning_rate = o.learning_rate;
    t.cnn.momentum = o.momentum;
    t.cnn.epochs = o.epochs;
    t.cnn.input_rows = train->data.shape[0];
    t.cnn.input_cols = train->data.shape[1];
    if (kind == DFX_MODEL_CNN && !train->data.is_matrix()) {
      throw DataError("CNN training needs spectrogram (matrix) rows");
    }
    t.tree.max_depth = o.max_depth;
    t.tree.min_samples_split = o.min_samples_split;
    t.tree.max_features = o.max_features;
    t.forest.tree = t.tree;
    t.forest.n_estimators = o.n_estimators;
    t.forest.bootstrap = o.bootstrap != 0;
    Require(kind >= DFX_MODEL_ANN && kind <= DFX_MODEL_FOREST,
            "unknown model kind");
    SeededRng rng(o.seed);
    auto m = std::make_unique<dfx_model>();
    m->model = TrainModel(static_cast<ModelKind>(kind), train->data, t, rng);
    *out = m.release();
  });
}

dfx_status dfx_model_predict(const dfx_model* model, const dfx_dataset* data,
                             double* probs, size_t capacity) {
  return Guard([&] {
    Require(model != nullptr && data != nullptr, "NULL argument");
    Require(probs != nullptr || data->data.empty(), "probs is NULL");
    Require(capacity >= data->data.size(), "output buffer too small");
    const std::vector<double> p = PredictProba(model->model, data->data);
    std::copy(p.begin(), p.end(), probs);
  });
}

dfx_status dfx_model_save(const dfx_model* model, const char* path) {
  return Guard([&] {
    Require(model != nullptr, "model is NULL");
    SaveModel(model->model, Str(path, "path is NULL"));
  });
}

dfx_status dfx_model_load(const char* path, dfx_model** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    auto m = std::make_unique<dfx_model>();
    m->model = LoadModel(Str(path, "path is NULL"));
    *out = m.release();
  });
}

dfx_model_kind dfx_model_get_kind(const dfx_model* model) {
  return static_cast<dfx_model_kind>(KindOf(model->model));
}

size_t dfx_model_input_dims(const dfx_model* model) {
  return model ? InputDims(model->model) : 0;
}

size_t dfx_model_history_length(const dfx_model* model) {
  return model ? HistoryOf(model->model).size() : 0;
}

dfx_status dfx_model_write_history(const dfx_model* model, const char* path) {
  return Guard([&] {
    Require(model != nullptr, "model is NULL");
    WriteHistoryCsv(HistoryOf(model->model), Str(path, "path is NULL"));
  });
}

void dfx_model_destroy(dfx_model* model) { delete model; }

// ----------------------------------------------------------------- metrics

namespace {

dfx_class_metrics ToC(const ClassMetrics& m) {
  return {m.precision, m.recall, m.f1, m.support};
}

}  // namespace

dfx_status dfx_classification_report(const int* y_true, const int* y_pred,
                                     size_t n, dfx_report* out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Require((y_true != nullptr && y_pred != nullptr) || n == 0,
            "NULL label array");
    const Metrics m = ClassificationReport(std::span<const int>(y_true, n),
                                           std::span<const int>(y_pred, n));
    dfx_report r{};
    r.tp = m.tp;
    r.fp = m.fp;
    r.tn = m.tn;
    r.fn = m.fn;
    r.per_class[0] = ToC(m.per_class[0]);
    r.per_class[1] = ToC(m.per_class[1]);
    r.macro = ToC(m.macro);
    r.weighted = ToC(m.weighted);
    r.accuracy = m.accuracy;
    r.undefined = m.undefined ? 1 : 0;
    *out = r;
  });
}

dfx_status dfx_permutation_importance(const dfx_model* model,
                                      const dfx_dataset* test, int repeats,
                                      uint64_t seed, dfx_importance* out,
                                      size_t capacity, size_t* count) {
  return Guard([&] {
    Require(model != nullptr && test != nullptr, "NULL argument");
    Require(out != nullptr || capacity == 0, "out is NULL");
    SeededRng rng(seed);
    const auto ranked =
        PermutationImportance(model->model, test->data, repeats, rng);
    for (std::size_t i = 0; i < ranked.size() && i < capacity; ++i) {
      dfx_importance& d = out[i];
      d = dfx_importance{};
      d.index = ranked[i].index;
      std::strncpy(d.name, ranked[i].name.c_str(), sizeof(d.name) - 1);
      d.mean_drop = ranked[i].mean_drop;
      d.std_drop = ranked[i].std_drop;
    }
    if (count != nullptr) *count = ranked.size();
  });
}

// ------------------------------------------------------------------ fusion

const char* dfx_category_name(dfx_category category) {
  if (category < DFX_REAL_REAL || category > DFX_DEEPFAKE_DEEPFAKE) {
    return nullptr;
  }
  return CategoryName(static_cast<FourWayCategory>(category)).data();
}

dfx_status dfx_fuse(double video_probability, double audio_probability,
                    dfx_verdict* out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    const FusionVerdict f =
        Fuse(MakeVerdict(video_probability, Modality::kVideo),
             MakeVerdict(audio_probability, Modality::kAudio));
    out->video_label = f.video.label;
    out->audio_label = f.audio.label;
    out->combined_label = f.combined_label;
    out->category = static_cast<dfx_category>(f.category);
  });
}

namespace {

std::vector<LabeledItem> Items(const char* const* ids, const int* labels,
                               std::size_t n) {
  Require((ids != nullptr && labels != nullptr) || n == 0, "NULL id array");
  std::vector<LabeledItem> items;
  for (std::size_t i = 0; i < n; ++i) {
    items.push_back({Str(ids[i], "NULL id"), labels[i]});
  }
  return items;
}

std::map<std::string, double> ProbMap(const char* const* ids,
                                      const double* probs, std::size_t n) {
  Require((ids != nullptr && probs != nullptr) || n == 0, "NULL id array");
  std::map<std::string, double> m;
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.emplace(Str(ids[i], "NULL id"), probs[i]).second) {
      throw DataError(std::string("duplicate prediction id ") + ids[i]);
    }
  }
  return m;
}

}  // namespace

dfx_status dfx_assemble_fourway(const char* const* video_ids,
                                const int* video_labels, size_t n_video,
                                const char* const* audio_ids,
                                const int* audio_labels, size_t n_audio,
                                uint64_t seed, dfx_pairing** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    const auto videos = Items(video_ids, video_labels, n_video);
    const auto audios = Items(audio_ids, audio_labels, n_audio);
    SeededRng rng(seed);
    auto p = std::make_unique<dfx_pairing>();
    p->pairs = AssembleFourway(videos, audios, rng);
    *out = p.release();
  });
}

dfx_status dfx_pairing_read_csv(const char* path, dfx_pairing** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    auto p = std::make_unique<dfx_pairing>();
    p->pairs = ReadPairingCsv(Str(path, "path is NULL"));
    *out = p.release();
  });
}

dfx_status dfx_pairing_write_csv(const dfx_pairing* p, const char* path) {
  return Guard([&] {
    Require(p != nullptr, "pairing is NULL");
    WritePairingCsv(p->pairs, Str(path, "path is NULL"));
  });
}

size_t dfx_pairing_size(const dfx_pairing* p) {
  return p ? p->pairs.size() : 0;
}

dfx_status dfx_pairing_get(const dfx_pairing* p, size_t i, dfx_pair_info* out) {
  return Guard([&] {
    Require(p != nullptr && out != nullptr, "NULL argument");
    Require(i < p->pairs.size(), "pair index out of range");
    const Pairing& x = p->pairs[i];
    out->sample_id = x.sample_id.c_str();
    out->video_id = x.video_id.c_str();
    out->audio_id = x.audio_id.c_str();
    out->video_label = x.video_label;
    out->audio_label = x.audio_label;
    out->category = static_cast<dfx_category>(x.category());
  });
}

void dfx_pairing_destroy(dfx_pairing* p) { delete p; }

namespace {

dfx_fourway_counts Counts(const FourwayReport& r) {
  dfx_fourway_counts c{};
  for (std::size_t k = 0; k < 4; ++k) {
    c.samples[k] = r.categories[k].samples;
    c.correct[k] = r.categories[k].correct;
    c.strict_correct[k] = r.categories[k].strict_correct;
  }
  c.total = r.total;
  c.total_correct = r.correct;
  c.total_strict = r.strict_correct;
  c.accuracy = r.accuracy;
  c.strict_accuracy = r.strict_accuracy;
  return c;
}

}  // namespace

dfx_status dfx_fourway_from_counts(const size_t samples[4],
                                   const size_t correct[4],
                                   dfx_fourway_counts* out) {
  return Guard([&] {
    Require(samples != nullptr && correct != nullptr && out != nullptr,
            "NULL argument");
    std::array<std::size_t, 4> s{}, c{};
    std::copy(samples, samples + 4, s.begin());
    std::copy(correct, correct + 4, c.begin());
    *out = Counts(ReportFromCounts(s, c));
  });
}

dfx_status dfx_evaluate_fourway(const dfx_pairing* pairs,
                                const char* const* video_ids,
                                const double* video_probs, size_t n_video,
                                const char* const* audio_ids,
                                const double* audio_probs, size_t n_audio,
                                dfx_fourway** out) {
  return Guard([&] {
    Require(pairs != nullptr && out != nullptr, "NULL argument");
    auto r = std::make_unique<dfx_fourway>();
    r->report = EvaluateFourway(pairs->pairs,
                                ProbMap(video_ids, video_probs, n_video),
                                ProbMap(audio_ids, audio_probs, n_audio));
    r->table = FormatFourwayTable(r->report);
    *out = r.release();
  });
}

dfx_status dfx_fourway_get_counts(const dfx_fourway* r,
                                  dfx_fourway_counts* out) {
  return Guard([&] {
    Require(r != nullptr && out != nullptr, "NULL argument");
    *out = Counts(r->report);
  });
}

dfx_status dfx_fourway_write_csv(const dfx_fourway* r, const char* path) {
  return Guard([&] {
    Require(r != nullptr, "report is NULL");
    WriteFourwayCsv(r->report, Str(path, "path is NULL"));
  });
}

dfx_status dfx_fourway_write_json(const dfx_fourway* r, const char* path) {
  return Guard([&] {
    Require(r != nullptr, "report is NULL");
    const std::string p = Str(path, "path is NULL");
    std::ofstream out(p, std::ios::binary);
    if (!out) throw DataError("cannot write " + p);
    out << FourwayJson(r->report);
    if (!out) throw DataError("failed writing " + p);
  });
}

dfx_status dfx_fourway_write_verdicts(const dfx_fourway* r, const char* path) {
  return Guard([&] {
    Require(r != nullptr, "report is NULL");
    WriteVerdictCsv(r->report, Str(path, "path is NULL"));
  });
}

const char* dfx_fourway_table(const dfx_fourway* r) {
  return r ? r->table.c_str() : nullptr;
}

void dfx_fourway_destroy(dfx_fourway* r) { delete r; }

}  // extern "C"
