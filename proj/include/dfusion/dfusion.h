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

#ifndef DFUSION_DFUSION_H_
#define DFUSION_DFUSION_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DFX_BUILDING_LIBRARY)
#define DFX_API __attribute__((visibility("default")))
#else
#define DFX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status. On failure a message describing the
 * error is available from dfx_last_error() on the same thread until the
 * next failing call. Objects are opaque handles released with their
 * matching *_destroy function (NULL is accepted and ignored). Output
 * handles are only written on success. */
typedef enum dfx_status {
  DFX_OK = 0,
  DFX_ERR_INVALID_ARGUMENT = 1,
  DFX_ERR_DATA = 2,
  DFX_ERR_NUMERIC = 3,
  DFX_ERR_INTERNAL = 4
} dfx_status;

DFX_API const char* dfx_version(void);
DFX_API const char* dfx_last_error(void);

/* Library diagnostics (per-video extraction notes, SMOTE warnings, ...).
 * level: 0 info, 1 warning, 2 error. Passing NULL restores the default
 * sink, which writes to stderr. */
typedef void (*dfx_log_fn)(int level, const char* message, void* user);
DFX_API void dfx_set_log_callback(dfx_log_fn fn, void* user);

/* ---------------------------------------------------------------- datasets */

#define DFX_NO_LABEL (-1)

typedef struct dfx_dataset dfx_dataset;

DFX_API dfx_status dfx_dataset_create(size_t dims, dfx_dataset** out);
DFX_API dfx_status dfx_dataset_append(dfx_dataset* ds, const char* id,
                                      const double* row, size_t dims,
                                      int label);
/* Feature table with the fixed 13-column header (label column optional). */
DFX_API dfx_status dfx_dataset_read_feature_csv(const char* path,
                                                dfx_dataset** out);
DFX_API dfx_status dfx_dataset_write_feature_csv(const dfx_dataset* ds,
                                                 const char* path);

typedef enum dfx_audio_form {
  DFX_AUDIO_SPECTROGRAM = 0, /* bands x frames matrix per clip */
  DFX_AUDIO_BAND_MEANS = 1   /* mean dB per band */
} dfx_audio_form;

/* Loads the matrices listed in a spectrogram index. For
 * DFX_AUDIO_SPECTROGRAM the time axis is center-cropped or padded with
 * pad_db to `frames` columns. */
DFX_API dfx_status dfx_dataset_read_audio_index(const char* index_path,
                                                dfx_audio_form form,
                                                size_t frames, double pad_db,
                                                dfx_dataset** out);
/* Writes the entries of `index_path` whose clip ids occur in `keep`, with
 * paths rewritten relative to the new file. */
DFX_API dfx_status dfx_audio_index_filter(const char* index_path,
                                          const dfx_dataset* keep,
                                          const char* out_path);

DFX_API size_t dfx_dataset_size(const dfx_dataset* ds);
DFX_API size_t dfx_dataset_dims(const dfx_dataset* ds);
/* Matrix datasets report their (rows, cols); tabular ones (0, 0). */
DFX_API void dfx_dataset_shape(const dfx_dataset* ds, size_t* rows,
                               size_t* cols);
DFX_API dfx_status dfx_dataset_class_counts(const dfx_dataset* ds,
                                            size_t counts[2]);
/* Returns NULL when i is out of range. Valid until the dataset is
 * destroyed. */
DFX_API const char* dfx_dataset_id(const dfx_dataset* ds, size_t i);
DFX_API int dfx_dataset_label(const dfx_dataset* ds, size_t i);
DFX_API const char* dfx_dataset_feature_name(const dfx_dataset* ds, size_t j);
DFX_API dfx_status dfx_dataset_row(const dfx_dataset* ds, size_t i,
                                   double* out, size_t capacity);
DFX_API dfx_status dfx_dataset_split(const dfx_dataset* ds, double ratio,
                                     uint64_t seed, dfx_dataset** train,
                                     dfx_dataset** test);
/* Oversamples the minority class to the majority count. */
DFX_API dfx_status dfx_dataset_smote(const dfx_dataset* ds, int k,
                                     uint64_t seed, dfx_dataset** out);
DFX_API void dfx_dataset_destroy(dfx_dataset* ds);

/* ----------------------------------------------------------------- bundles */

/* Reads and validates a landmark bundle, including its ROI images. */
DFX_API dfx_status dfx_validate_bundle(const char* path);

/* ----------------------------------------------------------- video features */

#define DFX_VIDEO_FEATURE_COUNT 13
#define DFX_ID_CAPACITY 256

typedef struct dfx_video_options {
  int stride;               /* use every stride-th frame, >= 1 */
  double blink_threshold;   /* eye aspect ratio below this is closed */
  int blink_min_frames;     /* closed run length counted as a blink */
  int gray_levels;          /* GLCM quantization */
  double pnp_max_rms_px;    /* reject head poses fitting worse than this */
} dfx_video_options;

typedef struct dfx_video_result {
  char video_id[DFX_ID_CAPACITY];
  double values[DFX_VIDEO_FEATURE_COUNT];
  int sampled_frames;
  int roi_frames;
  int pnp_failures;
  int kite_failures;
  int degenerate_blocks;
  int correlation_substituted;
} dfx_video_result;

DFX_API void dfx_video_options_default(dfx_video_options* opts);
DFX_API const char* dfx_video_feature_name(size_t index);
/* Per-video notes (skipped frames, degenerate texture) go to the log. */
DFX_API dfx_status dfx_extract_video_features(const char* bundle_path,
                                              const dfx_video_options* opts,
                                              dfx_video_result* out);

/* ------------------------------------------------------------------- audio */

typedef struct dfx_mel_options {
  int sample_rate;    /* clips are resampled to this rate */
  size_t frame_size;  /* power of two */
  size_t hop;
  size_t n_bands;
  double fmin;
  double fmax;        /* 0 means sample_rate / 2 */
  double floor_db;
  int db_before_mel;  /* 0: project power then convert to dB */
  int unit_reference; /* 0: 0 dB at the clip maximum; 1: at power 1 */
} dfx_mel_options;

typedef struct dfx_matrix dfx_matrix;

DFX_API void dfx_mel_options_default(dfx_mel_options* opts);
DFX_API dfx_status dfx_mel_spectrogram_from_wav(const char* wav_path,
                                                const dfx_mel_options* opts,
                                                dfx_matrix** out);
DFX_API size_t dfx_matrix_rows(const dfx_matrix* m);
DFX_API size_t dfx_matrix_cols(const dfx_matrix* m);
DFX_API const double* dfx_matrix_data(const dfx_matrix* m);
DFX_API dfx_status dfx_matrix_write(const dfx_matrix* m, const char* path);
DFX_API dfx_status dfx_matrix_read(const char* path, dfx_matrix** out);
DFX_API dfx_status dfx_matrix_render_pgm(const dfx_matrix* m, double floor_db,
                                         const char* path);
DFX_API void dfx_matrix_destroy(dfx_matrix* m);

typedef struct dfx_audio_index_entry {
  const char* clip_id;
  const char* path;
  int label; /* DFX_NO_LABEL when unknown */
  size_t rows;
  size_t cols;
} dfx_audio_index_entry;

DFX_API dfx_status dfx_write_audio_index(const char* path,
                                         const dfx_audio_index_entry* entries,
                                         size_t count);

/* ------------------------------------------------------------------ models */

typedef enum dfx_model_kind {
  DFX_MODEL_ANN = 0,
  DFX_MODEL_CNN = 1,
  DFX_MODEL_TREE = 2,
  DFX_MODEL_FOREST = 3
} dfx_model_kind;

#define DFX_MAX_LAYERS 8

typedef struct dfx_train_options {
  uint64_t seed;
  /* ann, cnn */
  size_t hidden[DFX_MAX_LAYERS]; /* ann hidden widths */
  size_t hidden_count;
  size_t conv_filters[DFX_MAX_LAYERS]; /* cnn conv block widths */
  size_t conv_count;
  size_t dense_units; /* cnn */
  double dropout;     /* cnn */
  size_t batch_size;
  double learning_rate;
  double momentum;
  int epochs;
  /* tree, forest */
  int max_depth;
  size_t min_samples_split;
  size_t max_features; /* 0: all (tree), floor(sqrt(d)) (forest) */
  size_t n_estimators;
  int bootstrap;
} dfx_train_options;

typedef struct dfx_model dfx_model;

DFX_API const char* dfx_model_kind_name(dfx_model_kind kind);
DFX_API dfx_status dfx_model_kind_parse(const char* name,
                                        dfx_model_kind* out);
/* Fills the defaults for `kind`. */
DFX_API void dfx_train_options_default(dfx_model_kind kind,
                                       dfx_train_options* opts);
/* CNN input size is taken from the dataset shape. */
DFX_API dfx_status dfx_model_train(dfx_model_kind kind,
                                   const dfx_dataset* train,
                                   const dfx_train_options* opts,
                                   dfx_model** out);
/* probs[i] = probability of label 1 for row i; capacity >= size. */
DFX_API dfx_status dfx_model_predict(const dfx_model* model,
                                     const dfx_dataset* data, double* probs,
                                     size_t capacity);
DFX_API dfx_status dfx_model_save(const dfx_model* model, const char* path);
DFX_API dfx_status dfx_model_load(const char* path, dfx_model** out);
DFX_API dfx_model_kind dfx_model_get_kind(const dfx_model* model);
DFX_API size_t dfx_model_input_dims(const dfx_model* model);
DFX_API size_t dfx_model_history_length(const dfx_model* model);
/* CSV "epoch,loss,accuracy"; header only for tree and forest models. */
DFX_API dfx_status dfx_model_write_history(const dfx_model* model,
                                           const char* path);
DFX_API void dfx_model_destroy(dfx_model* model);

/* ----------------------------------------------------------------- metrics */

typedef struct dfx_class_metrics {
  double precision;
  double recall;
  double f1;
  size_t support;
} dfx_class_metrics;

/* Label 1 (deepfake) is the positive class for tp/fp/tn/fn. Zero
 * denominators give 0 and set `undefined`. */
typedef struct dfx_report {
  size_t tp, fp, tn, fn;
  dfx_class_metrics per_class[2];
  dfx_class_metrics macro;
  dfx_class_metrics weighted;
  double accuracy;
  int undefined;
} dfx_report;

DFX_API dfx_status dfx_classification_report(const int* y_true,
                                             const int* y_pred, size_t n,
                                             dfx_report* out);

typedef struct dfx_importance {
  size_t index;
  char name[64];
  double mean_drop;
  double std_drop;
} dfx_importance;

/* Writes min(dims, capacity) entries sorted by mean accuracy drop; *count
 * receives dims. */
DFX_API dfx_status dfx_permutation_importance(const dfx_model* model,
                                              const dfx_dataset* test,
                                              int repeats, uint64_t seed,
                                              dfx_importance* out,
                                              size_t capacity, size_t* count);

/* ------------------------------------------------------------------ fusion */

typedef enum dfx_category {
  DFX_REAL_REAL = 0,
  DFX_REAL_DEEPFAKE = 1,
  DFX_DEEPFAKE_REAL = 2,
  DFX_DEEPFAKE_DEEPFAKE = 3
} dfx_category;

typedef struct dfx_verdict {
  int video_label;
  int audio_label;
  int combined_label; /* 1 when either modality says deepfake */
  dfx_category category;
} dfx_verdict;

DFX_API const char* dfx_category_name(dfx_category category);
/* Each probability is thresholded at 0.5 (>= is deepfake). */
DFX_API dfx_status dfx_fuse(double video_probability, double audio_probability,
                            dfx_verdict* out);

typedef struct dfx_pairing dfx_pairing;

typedef struct dfx_pair_info {
  const char* sample_id; /* valid until the pairing is destroyed */
  const char* video_id;
  const char* audio_id;
  int video_label;
  int audio_label;
  dfx_category category;
} dfx_pair_info;

DFX_API dfx_status dfx_assemble_fourway(const char* const* video_ids,
                                        const int* video_labels,
                                        size_t n_video,
                                        const char* const* audio_ids,
                                        const int* audio_labels,
                                        size_t n_audio, uint64_t seed,
                                        dfx_pairing** out);
DFX_API dfx_status dfx_pairing_read_csv(const char* path, dfx_pairing** out);
DFX_API dfx_status dfx_pairing_write_csv(const dfx_pairing* p,
                                         const char* path);
DFX_API size_t dfx_pairing_size(const dfx_pairing* p);
DFX_API dfx_status dfx_pairing_get(const dfx_pairing* p, size_t i,
                                   dfx_pair_info* out);
DFX_API void dfx_pairing_destroy(dfx_pairing* p);

typedef struct dfx_fourway_counts {
  size_t samples[4]; /* indexed by dfx_category */
  size_t correct[4];
  size_t strict_correct[4]; /* both modality labels right */
  size_t total;
  size_t total_correct;
  size_t total_strict;
  double accuracy;
  double strict_accuracy;
} dfx_fourway_counts;

typedef struct dfx_fourway dfx_fourway;

/* Totals and accuracy from recorded per-category counts. */
DFX_API dfx_status dfx_fourway_from_counts(const size_t samples[4],
                                           const size_t correct[4],
                                           dfx_fourway_counts* out);
/* Scores every pair with the given per-id probabilities. */
DFX_API dfx_status dfx_evaluate_fourway(
    const dfx_pairing* pairs, const char* const* video_ids,
    const double* video_probs, size_t n_video, const char* const* audio_ids,
    const double* audio_probs, size_t n_audio, dfx_fourway** out);
DFX_API dfx_status dfx_fourway_get_counts(const dfx_fourway* r,
                                          dfx_fourway_counts* out);
DFX_API dfx_status dfx_fourway_write_csv(const dfx_fourway* r,
                                         const char* path);
DFX_API dfx_status dfx_fourway_write_json(const dfx_fourway* r,
                                          const char* path);
/* One row per sample with both probabilities and the fused verdict. */
DFX_API dfx_status dfx_fourway_write_verdicts(const dfx_fourway* r,
                                              const char* path);
/* Text table; valid until the report is destroyed. */
DFX_API const char* dfx_fourway_table(const dfx_fourway* r);
DFX_API void dfx_fourway_destroy(dfx_fourway* r);

#ifdef __cplusplus
}
#endif

#endif  // DFUSION_DFUSION_H_
