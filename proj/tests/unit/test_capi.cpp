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

// Exercises the shared library through its C header only. Fixture files are
// written with the test support code.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"

#include "dfusion/dfusion.h"
#include "support/fixtures.hpp"
#include "support/scratch.hpp"

using dfusion::testing::ScratchDir;

namespace {

dfx_dataset* Blobs(std::size_t n, std::size_t dims) {
  dfx_dataset* ds = nullptr;
  REQUIRE(dfx_dataset_create(dims, &ds) == DFX_OK);
  std::vector<double> row(dims);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    for (std::size_t f = 0; f < dims; ++f) {
      row[f] = (label ? 2.0 : -2.0) + std::sin(1.7 * i + 0.3 * f);
    }
    const std::string id = "r" + std::to_string(i);
    REQUIRE(dfx_dataset_append(ds, id.c_str(), row.data(), dims, label) == DFX_OK);
  }
  return ds;
}

}  // namespace

TEST_CASE("errors carry a status and a message") {
  CHECK(std::string(dfx_version()) == "0.1.0");
  dfx_dataset* ds = nullptr;
  CHECK(dfx_dataset_create(0, &ds) == DFX_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(dfx_last_error()) > 0);
  CHECK(dfx_dataset_read_feature_csv("/nonexistent/x.csv", &ds) == DFX_ERR_DATA);
  CHECK(std::string(dfx_last_error()).find("x.csv") != std::string::npos);
  CHECK(dfx_dataset_create(3, nullptr) == DFX_ERR_INVALID_ARGUMENT);
  dfx_verdict v;
  CHECK(dfx_fuse(2.0, 0.1, &v) == DFX_ERR_INVALID_ARGUMENT);
  dfx_model_kind k;
  CHECK(dfx_model_kind_parse("svm", &k) == DFX_ERR_INVALID_ARGUMENT);
  CHECK(dfx_model_kind_parse("forest", &k) == DFX_OK);
  CHECK(k == DFX_MODEL_FOREST);
  dfx_dataset_destroy(nullptr);
  dfx_model_destroy(nullptr);
}

TEST_CASE("dataset, split, smote, train, predict, save, load") {
  ScratchDir dir("capi_learn");
  dfx_dataset* ds = Blobs(60, 13);
  CHECK(dfx_dataset_size(ds) == 60);
  CHECK(dfx_dataset_dims(ds) == 13);
  std::size_t counts[2];
  REQUIRE(dfx_dataset_class_counts(ds, counts) == DFX_OK);
  CHECK(counts[0] == 30);
  CHECK(std::string(dfx_dataset_id(ds, 3)) == "r3");
  CHECK(dfx_dataset_label(ds, 3) == 1);
  double row[13];
  CHECK(dfx_dataset_row(ds, 0, row, 13) == DFX_OK);
  CHECK(dfx_dataset_row(ds, 0, row, 2) == DFX_ERR_INVALID_ARGUMENT);
  CHECK(dfx_dataset_append(ds, "r0", row, 13, 0) == DFX_ERR_DATA);

  dfx_dataset *train = nullptr, *test = nullptr;
  REQUIRE(dfx_dataset_split(ds, 0.8, 42, &train, &test) == DFX_OK);
  CHECK(dfx_dataset_size(train) == 48);
  CHECK(dfx_dataset_size(test) == 12);

  for (dfx_model_kind kind : {DFX_MODEL_ANN, DFX_MODEL_TREE, DFX_MODEL_FOREST}) {
    dfx_train_options opts;
    dfx_train_options_default(kind, &opts);
    opts.epochs = 20;
    dfx_model* m = nullptr;
    REQUIRE(dfx_model_train(kind, train, &opts, &m) == DFX_OK);
    CHECK(dfx_model_get_kind(m) == kind);
    CHECK(dfx_model_input_dims(m) == 13);
    std::vector<double> probs(12), again(12);
    REQUIRE(dfx_model_predict(m, test, probs.data(), probs.size()) == DFX_OK);
    const std::string path = dir / (std::string(dfx_model_kind_name(kind)) + ".json");
    REQUIRE(dfx_model_save(m, path.c_str()) == DFX_OK);
    dfx_model* back = nullptr;
    REQUIRE(dfx_model_load(path.c_str(), &back) == DFX_OK);
    REQUIRE(dfx_model_predict(back, test, again.data(), again.size()) == DFX_OK);
    CHECK(probs == again);
    std::vector<int> truth, pred;
    for (std::size_t i = 0; i < 12; ++i) {
      truth.push_back(dfx_dataset_label(test, i));
      pred.push_back(probs[i] >= 0.5);
    }
    dfx_report rep;
    REQUIRE(dfx_classification_report(truth.data(), pred.data(), 12, &rep) == DFX_OK);
    CHECK(rep.accuracy >= 0.9);
    if (kind == DFX_MODEL_ANN) {
      CHECK(dfx_model_history_length(m) == 20);
      const std::string h = dir / "history.csv";
      CHECK(dfx_model_write_history(m, h.c_str()) == DFX_OK);
    }
    if (kind == DFX_MODEL_TREE) {
      dfx_importance imp[13];
      std::size_t n = 0;
      REQUIRE(dfx_permutation_importance(m, test, 3, 1, imp, 13, &n) == DFX_OK);
      CHECK(n == 13);
      CHECK(imp[0].mean_drop >= imp[12].mean_drop);
    }
    dfx_model_destroy(m);
    dfx_model_destroy(back);
  }

  // Unbalanced set through SMOTE.
  dfx_dataset* odd = nullptr;
  REQUIRE(dfx_dataset_create(2, &odd) == DFX_OK);
  for (int i = 0; i < 9; ++i) {
    const double r[2] = {double(i), double(i % 3)};
    const std::string id = "o" + std::to_string(i);
    REQUIRE(dfx_dataset_append(odd, id.c_str(), r, 2, i < 6 ? 0 : 1) == DFX_OK);
  }
  dfx_dataset* bal = nullptr;
  REQUIRE(dfx_dataset_smote(odd, 5, 3, &bal) == DFX_OK);
  REQUIRE(dfx_dataset_class_counts(bal, counts) == DFX_OK);
  CHECK(counts[0] == 6);
  CHECK(counts[1] == 6);

  dfx_model* wrong = nullptr;
  dfx_train_options opts;
  dfx_train_options_default(DFX_MODEL_ANN, &opts);
  REQUIRE(dfx_model_train(DFX_MODEL_ANN, train, &opts, &wrong) == DFX_OK);
  double p[9];
  CHECK(dfx_model_predict(wrong, odd, p, 9) == DFX_ERR_DATA);
  dfx_model_destroy(wrong);

  dfx_dataset_destroy(bal);
  dfx_dataset_destroy(odd);
  dfx_dataset_destroy(train);
  dfx_dataset_destroy(test);
  dfx_dataset_destroy(ds);
}

TEST_CASE("video and audio extraction through the C API") {
  ScratchDir dir("capi_extract");
  const auto fx = dfusion::testing::WriteFixtureSet(dir.str(), 2, 2, 9);
  const std::string bundle = fx.bundles_dir + "/video00.json";
  CHECK(dfx_validate_bundle(bundle.c_str()) == DFX_OK);
  dfx_video_options vo;
  dfx_video_options_default(&vo);
  dfx_video_result res;
  REQUIRE(dfx_extract_video_features(bundle.c_str(), &vo, &res) == DFX_OK);
  CHECK(std::string(res.video_id) == "video00");
  CHECK(res.sampled_frames == 30);
  CHECK(res.values[2] == 3);  // blink_count
  CHECK(std::string(dfx_video_feature_name(2)) == "blink_count");
  vo.stride = 0;
  CHECK(dfx_extract_video_features(bundle.c_str(), &vo, &res) == DFX_ERR_INVALID_ARGUMENT);

  const std::string bad = dir / "bad.json";
  dfusion::testing::Spit(bad, "{\"video_id\": 3}");
  CHECK(dfx_validate_bundle(bad.c_str()) == DFX_ERR_DATA);

  dfx_mel_options mo;
  dfx_mel_options_default(&mo);
  CHECK(mo.n_bands == 128);
  dfx_matrix* m = nullptr;
  const std::string wav = fx.wav_dir + "/clip00.wav";
  REQUIRE(dfx_mel_spectrogram_from_wav(wav.c_str(), &mo, &m) == DFX_OK);
  CHECK(dfx_matrix_rows(m) == 128);
  CHECK(dfx_matrix_cols(m) == 59);  // 2 s: 1 + floor((32000 - 2048) / 512)
  const std::string mp = dir / "clip00.dfsm";
  REQUIRE(dfx_matrix_write(m, mp.c_str()) == DFX_OK);
  dfx_matrix* back = nullptr;
  REQUIRE(dfx_matrix_read(mp.c_str(), &back) == DFX_OK);
  CHECK(dfx_matrix_cols(back) == 59);
  const std::string pgm = dir / "clip00.pgm";
  CHECK(dfx_matrix_render_pgm(m, -80, pgm.c_str()) == DFX_OK);

  const dfx_audio_index_entry entries[2] = {{"clip00", "clip00.dfsm", 1, 128, 59},
                                            {"copy", "clip00.dfsm", 0, 128, 59}};
  const std::string index = dir / "index.csv";
  REQUIRE(dfx_write_audio_index(index.c_str(), entries, 2) == DFX_OK);
  dfx_dataset* spectra = nullptr;
  REQUIRE(dfx_dataset_read_audio_index(index.c_str(), DFX_AUDIO_SPECTROGRAM, 64, -80, &spectra) == DFX_OK);
  std::size_t r = 0, c = 0;
  dfx_dataset_shape(spectra, &r, &c);
  CHECK(r == 128);
  CHECK(c == 64);
  dfx_dataset* bands = nullptr;
  REQUIRE(dfx_dataset_read_audio_index(index.c_str(), DFX_AUDIO_BAND_MEANS, 0, -80, &bands) == DFX_OK);
  CHECK(dfx_dataset_dims(bands) == 128);
  CHECK(std::string(dfx_dataset_feature_name(bands, 5)) == "band5");
  dfx_dataset_destroy(spectra);
  dfx_dataset_destroy(bands);
  dfx_matrix_destroy(m);
  dfx_matrix_destroy(back);
}

TEST_CASE("fusion through the C API") {
  dfx_verdict v;
  REQUIRE(dfx_fuse(0.2, 0.7, &v) == DFX_OK);
  CHECK(v.combined_label == 1);
  CHECK(v.category == DFX_REAL_DEEPFAKE);
  CHECK(std::string(dfx_category_name(v.category)) == "real-deepfake");

  const std::size_t samples[4] = {528, 523, 513, 515};
  const std::size_t correct[4] = {502, 496, 477, 480};
  dfx_fourway_counts counts;
  REQUIRE(dfx_fourway_from_counts(samples, correct, &counts) == DFX_OK);
  CHECK(counts.total == 2079);
  CHECK(std::abs(counts.accuracy - 0.9404) < 1e-4);

  const char* vids[4] = {"v0", "v1", "v2", "v3"};
  const int vl[4] = {0, 0, 1, 1};
  const char* aids[4] = {"a0", "a1", "a2", "a3"};
  const int al[4] = {0, 1, 0, 1};
  dfx_pairing* pairs = nullptr;
  REQUIRE(dfx_assemble_fourway(vids, vl, 4, aids, al, 4, 5, &pairs) == DFX_OK);
  REQUIRE(dfx_pairing_size(pairs) == 4);
  dfx_pair_info info;
  REQUIRE(dfx_pairing_get(pairs, 0, &info) == DFX_OK);
  CHECK(info.category == DFX_REAL_REAL);
  CHECK(dfx_pairing_get(pairs, 9, &info) == DFX_ERR_INVALID_ARGUMENT);

  const double vp[4] = {0.1, 0.2, 0.9, 0.8};
  const double ap[4] = {0.1, 0.9, 0.2, 0.8};
  dfx_fourway* r = nullptr;
  REQUIRE(dfx_evaluate_fourway(pairs, vids, vp, 4, aids, ap, 4, &r) == DFX_OK);
  REQUIRE(dfx_fourway_get_counts(r, &counts) == DFX_OK);
  CHECK(counts.accuracy == 1.0);
  CHECK(std::string(dfx_fourway_table(r)).find("real-real") != std::string::npos);
  dfx_fourway* missing = nullptr;
  CHECK(dfx_evaluate_fourway(pairs, vids, vp, 3, aids, ap, 4, &missing) == DFX_ERR_DATA);
  dfx_fourway_destroy(r);
  dfx_pairing_destroy(pairs);
}
