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

// Acceptance run: one line per criterion with its runtime and budget.
// Exit status is 0 only when every criterion passes within its budget.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "audio/fft.hpp"
#include "audio/mel.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "fusion/fusion.hpp"
#include "geometry/kite.hpp"
#include "geometry/face_metrics.hpp"
#include "geometry/pose.hpp"
#include "learn/ann.hpp"
#include "learn/cnn.hpp"
#include "learn/metrics.hpp"
#include "learn/sampling.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/scratch.hpp"
#include "texture/glcm.hpp"
#include "texture/orgb.hpp"

using namespace dfusion;
using namespace dfusion::testing;
namespace fs = std::filesystem;

namespace {

// Collects failed expectations and a few measured values for the report.
class Outcome {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void Note(const std::string& text) { notes_.push_back(text); }

  bool ok() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

AudioClip Sine(double hz, double seconds, int rate) {
  AudioClip c;
  c.sample_rate = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  for (std::size_t i = 0; i < n; ++i)
    c.samples.push_back(0.5 * std::sin(2 * std::numbers::pi * hz * i / rate));
  return c;
}

std::size_t ArgmaxColumn(const Matrix& m, std::size_t col) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < m.rows; ++r)
    if (m(r, col) > m(best, col)) best = r;
  return best;
}

std::vector<std::size_t> RandomIndices(SeededRng& rng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  rng.Shuffle(all);
  all.resize(std::min(n, count));
  return all;
}

double Accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) ok += pred[i] == truth[i];
  return static_cast<double>(ok) / static_cast<double>(pred.size());
}

// ---------------------------------------------------------------------------

void MelScale(Outcome& o) {
  const double m = HzToMel(1000.0);
  o.Expect(m >= 999.9 && m <= 1000.1, "hz_to_mel(1000) outside [999.9, 1000.1]");
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double f = 8000.0 * i / 999.0;
    worst = std::max(worst, RelativeError(MelToHz(HzToMel(f)), f, 1e-300));
  }
  o.Expect(worst < 1e-9, "mel round trip relative error >= 1e-9");
  o.Note("hz_to_mel(1000)=" + Fmt("%.6f", m));
  o.Note("max round-trip rel err=" + Fmt("%.2e", worst));
}

void FilterBank(Outcome& o) {
  const MelFilterBank bank = BuildMelFilterBank(128, 16000, 2048, 0, 8000);
  o.Expect(bank.weights.rows == 128 && bank.weights.cols == 1025,
           "weight matrix is not 128x1025");
  std::size_t bad_rows = 0;
  for (std::size_t k = 0; k < bank.weights.rows; ++k) {
    double peak = 0, low = 0;
    std::size_t first = bank.weights.cols, last = 0;
    for (std::size_t b = 0; b < bank.weights.cols; ++b) {
      const double w = bank.weights(k, b);
      low = std::min(low, w);
      peak = std::max(peak, w);
      if (w > 0) {
        first = std::min(first, b);
        last = std::max(last, b);
      }
    }
    bool contiguous = first <= last;
    for (std::size_t b = first; contiguous && b <= last; ++b)
      contiguous = bank.weights(k, b) > 0.0;
    if (low < 0 || std::abs(peak - 1.0) > 1e-12 || !contiguous) ++bad_rows;
  }
  o.Expect(bad_rows == 0, std::to_string(bad_rows) +
                              " rows negative, without unit peak or with gaps");
  o.Note("shape=" + std::to_string(bank.weights.rows) + "x" +
         std::to_string(bank.weights.cols));
}

void SpectrogramOracle(Outcome& o) {
  SeededRng rng(31);
  double worst = 0;
  for (std::size_t n = 2; n <= 256; n *= 2) {
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {rng.Normal(), rng.Normal()};
    const auto ref = NaiveDft(x);
    Fft(x);
    double err = 0, scale = 0;
    for (std::size_t k = 0; k < n; ++k) {
      err = std::max(err, std::abs(x[k] - ref[k]));
      scale = std::max(scale, std::abs(ref[k]));
    }
    worst = std::max(worst, err / scale);
  }
  o.Expect(worst < 1e-9, "FFT differs from the naive DFT");

  const AudioClip tone = Sine(440, 3.0, 16000);
  const Stft s = ComputeStft(tone, 2048, 512);
  std::size_t off_bin = 0;
  for (std::size_t c = 0; c < s.magnitudes.cols; ++c)
    off_bin += ArgmaxColumn(s.magnitudes, c) != 56;
  o.Expect(off_bin == 0, std::to_string(off_bin) + " STFT frames peak off bin 56");

  const MelSpectrogram ms = ComputeMelSpectrogram(tone);
  const MelFilterBank bank = BuildMelFilterBank(128, 16000, 2048, 0, 8000);
  std::size_t off_band = 0;
  for (std::size_t c = 0; c < ms.db.cols; ++c)
    off_band += !(bank.weights(ArgmaxColumn(ms.db, c), 56) > 0.0);
  o.Expect(ms.db.cols > 0 && off_band == 0,
           std::to_string(off_band) + " mel frames peak outside bin 56's band");
  o.Note("FFT max rel err=" + Fmt("%.2e", worst));
  o.Note("frames=" + std::to_string(s.magnitudes.cols));
}

void GlcmOracle(Outcome& o) {
  SeededRng rng(21);
  std::size_t mismatches = 0, compared = 0;
  for (int t = 0; t < 200; ++t) {
    const int w = 2 + static_cast<int>(rng.UniformIndex(15));
    const int h = 2 + static_cast<int>(rng.UniformIndex(15));
    const int levels = 2 + static_cast<int>(rng.UniformIndex(31));
    LevelImage img{w, h, levels, {}};
    for (int i = 0; i < w * h; ++i)
      img.data.push_back(static_cast<int>(rng.UniformIndex(levels)));
    for (const Offset& off : kStandardOffsets) {
      for (bool sym : {false, true}) {
        for (bool norm : {false, true}) {
          const Glcm g = ComputeGlcm(img, off, sym, norm);
          const auto ref = BruteGlcm(img, off, sym, norm);
          ++compared;
          bool same = g.p.size() == ref.size();
          for (std::size_t k = 0; same && k < ref.size(); ++k)
            same = std::abs(g.p[k] - ref[k]) < 1e-15;
          mismatches += !same;
        }
      }
    }
  }
  o.Expect(mismatches == 0, std::to_string(mismatches) + " GLCMs differ from enumeration");

  std::size_t nonzero = 0;
  for (int v = 0; v < 8; ++v) {
    const LevelImage flat{9, 7, 8, std::vector<int>(63, v)};
    for (const Offset& off : kStandardOffsets)
      nonzero += GlcmContrast(ComputeGlcm(flat, off, true, true)) != 0.0;
  }
  o.Expect(nonzero == 0, "constant image with nonzero contrast");

  Glcm anti;
  anti.levels = 2;
  anti.p = {0, 0.5, 0.5, 0};
  const auto corr = GlcmCorrelation(anti);
  o.Expect(corr.has_value() && std::abs(*corr + 1.0) < 1e-9,
           "anti-diagonal correlation is not -1");
  o.Note("matrices compared=" + std::to_string(compared));
  if (corr) o.Note("anti-diagonal corr=" + Fmt("%.12f", *corr));
}

void Orgb(Outcome& o) {
  SeededRng rng(9);
  double gray_worst = 0, lin_worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.Uniform(0, 255);
    const OrgbPixel g = RgbToOrgb(v, v, v);
    gray_worst = std::max({gray_worst, std::abs(g.c1), std::abs(g.c2)});
    const double a[3] = {rng.Uniform(0, 255), rng.Uniform(0, 255), rng.Uniform(0, 255)};
    const double b[3] = {rng.Uniform(0, 255), rng.Uniform(0, 255), rng.Uniform(0, 255)};
    const double s = rng.Uniform(-2, 2);
    const OrgbPixel fa = RgbToOrgb(a[0], a[1], a[2]);
    const OrgbPixel fb = RgbToOrgb(b[0], b[1], b[2]);
    const OrgbPixel mix = RgbToOrgb(a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]);
    lin_worst = std::max({lin_worst, std::abs(fa.l + s * fb.l - mix.l),
                          std::abs(fa.c1 + s * fb.c1 - mix.c1),
                          std::abs(fa.c2 + s * fb.c2 - mix.c2)});
  }
  o.Expect(gray_worst < 1e-12, "gray input with nonzero chroma");
  o.Expect(lin_worst < 1e-9, "transform is not linear");
  o.Note("gray max |C|=" + Fmt("%.1e", gray_worst));
  o.Note("linearity max err=" + Fmt("%.1e", lin_worst));
}

void PoseSolver(Outcome& o) {
  const CameraIntrinsics cam = DefaultCamera(640, 480);
  SeededRng rng(4);
  double angle_worst = 0, rms_worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = rng.Uniform(-60, 60), y = rng.Uniform(-60, 60),
                 ro = rng.Uniform(-30, 30);
    const Mat3 r = RotationFromEuler(p, y, ro);
    const Vec3 t(rng.Uniform(-100, 100), rng.Uniform(-100, 100), rng.Uniform(1500, 4000));
    std::array<Point2, 6> img;
    for (int k = 0; k < 6; ++k) img[k] = Project(r, t, CanonicalHeadModel()[k], cam);
    const HeadPose hp = SolvePnp(CanonicalHeadModel(), img, cam);
    angle_worst = std::max({angle_worst, std::abs(hp.euler.pitch - p),
                            std::abs(hp.euler.yaw - y), std::abs(hp.euler.roll - ro)});
    rms_worst = std::max(rms_worst, hp.rms_error);
  }
  o.Expect(angle_worst < 0.5, "Euler angle error >= 0.5 deg");
  o.Expect(rms_worst < 1e-6, "RMS reprojection >= 1e-6 px");

  double rod_worst = 0, euler_worst = 0;
  for (int i = 0; i < 500; ++i) {
    Vec3 axis(rng.Normal(), rng.Normal(), rng.Normal());
    axis.normalize();
    const Vec3 v = axis * rng.Uniform(0.0, std::numbers::pi - 1e-3);
    rod_worst = std::max(rod_worst, (RodriguesInverse(Rodrigues(v)) - v).cwiseAbs().maxCoeff());
    const double p = rng.Uniform(-179, 179), y = rng.Uniform(-89, 89),
                 r = rng.Uniform(-179, 179);
    const EulerAngles back = EulerFromRotation(RotationFromEuler(p, y, r));
    euler_worst = std::max({euler_worst, std::abs(back.pitch - p),
                            std::abs(back.yaw - y), std::abs(back.roll - r)});
  }
  o.Expect(rod_worst < 1e-6, "Rodrigues round trip error >= 1e-6");
  o.Expect(euler_worst < 1e-6, "Euler round trip error >= 1e-6");
  o.Note("max angle err=" + Fmt("%.2e", angle_worst) + " deg");
  o.Note("max rms=" + Fmt("%.2e", rms_worst) + " px");
}

void CheekboneGeometry(Outcome& o) {
  SeededRng rng(11);
  int checked = 0;
  double worst = 0;
  std::size_t identity_fail = 0;
  while (checked < 100) {
    const Point2 mt{rng.Uniform(-50, 50), rng.Uniform(-50, 50)};
    const double cl = rng.Uniform(80, 200);
    const Point2 c{mt.x + rng.Uniform(-10, 10), mt.y + cl};
    const Point2 r{mt.x + rng.Uniform(30, 150), mt.y + rng.Uniform(0, cl)};
    const Point2 l{mt.x - rng.Uniform(30, 150), mt.y + rng.Uniform(0, cl)};
    const double lr = Euclid(l, r), mtr = Euclid(mt, r), mtc = Euclid(mt, c);
    if (mtc > 0.95 * (lr + mtr) || mtc < 1.05 * std::abs(lr - mtr)) continue;
    const KiteOracle ref = KiteByConstruction(l, r, mt, c);
    if (ref.angle_y < 5.0 || ref.angle_y > 175.0) continue;
    const KiteMeasure k = MeasureKite(l, r, mt, c);
    identity_fail += k.angle_y != 180.0 - (k.angle_x + k.angle_r);
    identity_fail += k.height != k.mtc - k.h;
    worst = std::max({worst, std::abs(k.h - ref.h), std::abs(k.height - ref.height)});
    ++checked;
  }
  o.Expect(identity_fail == 0, "angle sum or height identity broken");
  o.Expect(worst < 1e-9, "differs from the construction by >= 1e-9 px");
  o.Note("kites=" + std::to_string(checked));
  o.Note("max |dh|=" + Fmt("%.2e", worst) + " px");
}

void Learning(Outcome& o) {
  using Clock = std::chrono::steady_clock;
  // ANN gradient.
  {
    SeededRng rng(13);
    AnnModel m = MakeAnn({13, 10, 6, 1});
    for (double& p : m.params) p = rng.Normal() * 0.4;
    std::vector<std::vector<double>> inputs;
    std::vector<int> labels;
    for (int i = 0; i < 12; ++i) {
      std::vector<double> in(13);
      for (double& v : in) v = rng.Normal();
      inputs.push_back(in);
      labels.push_back(i % 2);
    }
    std::vector<double> grad;
    AnnLossAndGradient(m, inputs, labels, grad);
    const auto idx = RandomIndices(rng, m.params.size(), 100);
    const auto fd = FiniteDifferences(
        [&](const std::vector<double>& p) {
          AnnModel c = m;
          c.params = p;
          std::vector<double> g;
          return AnnLossAndGradient(c, inputs, labels, g);
        },
        m.params, idx);
    double worst = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      worst = std::max(worst, RelativeError(grad[idx[k]], fd[k]));
    o.Expect(idx.size() == 100 && worst < 1e-4, "ANN gradient rel err >= 1e-4");
    o.Note("ANN grad err=" + Fmt("%.1e", worst));
  }
  // CNN gradient.
  {
    CnnConfig cfg;
    cfg.input_rows = 14;
    cfg.input_cols = 14;
    cfg.conv_filters = {3, 4};
    cfg.dense_units = 5;
    CnnModel m = MakeCnn(cfg);
    m.input_mean = 0.2;
    m.input_std = 1.3;
    SeededRng rng(16);
    for (double& p : m.params) p = rng.Normal() * 0.3;
    std::vector<std::vector<double>> raw;
    std::vector<int> labels;
    for (int i = 0; i < 6; ++i) {
      std::vector<double> in(14 * 14);
      for (double& v : in) v = rng.Normal();
      raw.push_back(in);
      labels.push_back(i % 2);
    }
    std::vector<std::span<const double>> inputs(raw.begin(), raw.end());
    std::vector<double> grad;
    CnnLossAndGradient(m, inputs, labels, grad);
    const auto idx = RandomIndices(rng, m.params.size(), 100);
    const auto fd = FiniteDifferences(
        [&](const std::vector<double>& p) {
          CnnModel c = m;
          c.params = p;
          std::vector<double> g;
          return CnnLossAndGradient(c, inputs, labels, g);
        },
        m.params, idx);
    double worst = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      worst = std::max(worst, RelativeError(grad[idx[k]], fd[k]));
    o.Expect(idx.size() == 100 && worst < 1e-4, "CNN gradient rel err >= 1e-4");
    o.Note("CNN grad err=" + Fmt("%.1e", worst));
  }
  // ANN on blobs.
  {
    const auto start = Clock::now();
    const Dataset blobs = MakeBlobs(1000, 13, 0.5, 14);
    SeededRng split_rng(1);
    const Split s = TrainTestSplit(blobs, 0.8, split_rng);
    AnnConfig cfg;
    cfg.epochs = 200;
    SeededRng rng(2);
    const AnnModel a = TrainAnn(s.train, cfg, rng);
    std::vector<int> pred;
    for (const auto& row : s.test.rows) pred.push_back(AnnPredict(a, row) >= 0.5);
    const double acc = Accuracy(pred, s.test.labels);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    o.Expect(acc >= 0.95, "ANN blob accuracy < 0.95");
    o.Expect(secs < 60, "ANN blob training >= 60 s");
    o.Note("ANN acc=" + Fmt("%.3f", acc) + " in " + Fmt("%.1f", secs) + " s");
  }
  // CNN on band-energy spectrograms.
  {
    const auto start = Clock::now();
    const Dataset ds = MakeBandEnergySpectrograms(400, 128, 64, 17);
    SeededRng split_rng(3);
    const Split s = TrainTestSplit(ds, 0.8, split_rng);
    CnnConfig cfg;
    cfg.input_rows = 128;
    cfg.input_cols = 64;
    cfg.conv_filters = {8, 16};
    cfg.dense_units = 32;
    cfg.epochs = 8;
    SeededRng rng(4);
    const CnnModel m = TrainCnn(s.train, cfg, rng);
    std::vector<int> pred;
    for (const auto& row : s.test.rows) pred.push_back(CnnForward(m, row) >= 0.5);
    const double acc = Accuracy(pred, s.test.labels);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    o.Expect(acc >= 0.9, "CNN spectrogram accuracy < 0.9");
    o.Expect(secs < 300, "CNN training >= 5 min");
    o.Note("CNN acc=" + Fmt("%.3f", acc) + " in " + Fmt("%.1f", secs) + " s");
  }
}

void SmoteCheck(Outcome& o) {
  const int k = 5;
  SeededRng rng(8);
  Dataset ds;
  for (int i = 0; i < 200; ++i)
    ds.Add("a" + std::to_string(i), {rng.Normal(), rng.Normal(), rng.Normal(), rng.Normal()}, 0);
  for (int i = 0; i < 37; ++i)
    ds.Add("b" + std::to_string(i),
           {rng.Normal() + 3, rng.Normal(), rng.Normal() - 1, rng.Normal()}, 1);
  SeededRng s(9);
  const SmoteResult r = Smote(ds, k, s);
  o.Expect(r.data.ClassCounts() == std::array<std::size_t, 2>{200, 200},
           "classes not exactly balanced");
  o.Expect(r.origins.size() == 163, "wrong number of synthetic rows");

  std::size_t off_segment = 0, not_neighbor = 0;
  for (std::size_t n = 0; n < r.origins.size(); ++n) {
    const SmoteOrigin& org = r.origins[n];
    const auto& x = ds.rows[org.base];
    const auto& y = ds.rows[org.neighbor];
    const auto& z = r.data.rows[ds.size() + n];
    bool on = ds.labels[org.base] == 1 && ds.labels[org.neighbor] == 1 &&
              r.data.labels[ds.size() + n] == 1 && org.gap >= 0 && org.gap < 1;
    for (std::size_t f = 0; on && f < x.size(); ++f)
      on = std::abs(z[f] - (x[f] + org.gap * (y[f] - x[f]))) <= 1e-12 * (1 + std::abs(z[f]));
    off_segment += !on;

    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (ds.labels[j] != 1 || j == org.base) continue;
      double dist = 0;
      for (std::size_t f = 0; f < x.size(); ++f)
        dist += (ds.rows[j][f] - x[f]) * (ds.rows[j][f] - x[f]);
      d.push_back({dist, j});
    }
    std::sort(d.begin(), d.end());
    bool found = false;
    for (int j = 0; j < k; ++j) found |= d[j].second == org.neighbor;
    not_neighbor += !found;
  }
  o.Expect(off_segment == 0, std::to_string(off_segment) + " points off their segment");
  o.Expect(not_neighbor == 0, std::to_string(not_neighbor) + " pairs are not k-nearest");
  o.Note("synthetic=" + std::to_string(r.origins.size()));
}

void MetricsAndFusion(Outcome& o) {
  std::vector<int> truth, pred;
  auto add = [&](int t, int p, int n) {
    for (int i = 0; i < n; ++i) {
      truth.push_back(t);
      pred.push_back(p);
    }
  };
  add(1, 1, 30);
  add(0, 1, 5);
  add(1, 0, 15);
  add(0, 0, 50);
  const Metrics m = ClassificationReport(truth, pred);
  const double p1 = 30.0 / 35, r1 = 30.0 / 45, f1 = 2 * p1 * r1 / (p1 + r1);
  const double p0 = 50.0 / 65, r0 = 50.0 / 55, f0 = 2 * p0 * r0 / (p0 + r0);
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-15; };
  o.Expect(m.tp == 30 && m.fp == 5 && m.fn == 15 && m.tn == 50, "confusion counts");
  o.Expect(near(m.per_class[1].precision, p1) && near(m.per_class[1].recall, r1) &&
               near(m.per_class[1].f1, f1),
           "class 1 precision/recall/f1");
  o.Expect(near(m.per_class[0].precision, p0) && near(m.per_class[0].recall, r0) &&
               near(m.per_class[0].f1, f0),
           "class 0 precision/recall/f1");
  o.Expect(near(m.macro.f1, (f0 + f1) / 2) && near(m.weighted.f1, (f0 * 55 + f1 * 45) / 100),
           "macro/weighted f1");
  o.Expect(near(m.accuracy, 0.8), "accuracy");

  struct Row {
    int v, a, combined;
    FourWayCategory cat;
  };
  const Row rows[] = {{0, 0, 0, FourWayCategory::kRealReal},
                      {0, 1, 1, FourWayCategory::kRealDeepfake},
                      {1, 0, 1, FourWayCategory::kDeepfakeReal},
                      {1, 1, 1, FourWayCategory::kDeepfakeDeepfake}};
  int truth_ok = 0;
  for (const Row& r : rows) {
    const FusionVerdict f = Fuse(MakeVerdict(r.v ? 0.9 : 0.1, Modality::kVideo),
                                 MakeVerdict(r.a ? 0.8 : 0.2, Modality::kAudio));
    truth_ok += f.combined_label == r.combined && f.category == r.cat;
  }
  o.Expect(truth_ok == 4, "truth table " + std::to_string(truth_ok) + "/4");

  const FourwayReport t3 = ReportFromCounts({528, 523, 513, 515}, {502, 496, 477, 480});
  o.Expect(t3.total == 2079 && t3.correct == 1955, "recorded totals");
  o.Expect(std::abs(t3.accuracy - 0.9404) <= 1e-4, "recorded accuracy");
  o.Note("truth table " + std::to_string(truth_ok) + "/4");
  o.Note("four-way acc=" + std::to_string(t3.correct) + "/" + std::to_string(t3.total) +
         "=" + Fmt("%.4f", t3.accuracy));
}

int RunCli(const std::string& cwd, const std::string& args) {
  const std::string cmd = "cd '" + cwd + "' && '" + DFUSION_CLI_PATH + "' " + args +
                          " >> log.txt 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void EndToEnd(Outcome& o) {
  ScratchDir dir("acceptance_e2e");
  const std::vector<std::string> steps = {
      "extract-video --bundles fx/bundles --labels fx/video_labels.csv --out out/video.csv",
      "extract-audio --wavs fx/wav --labels fx/audio_labels.csv --out-dir out/audio",
      "train --kind ann --data out/video.csv --epochs 50 --out-dir out/video_model",
      "train --kind cnn --data out/audio/index.csv --frames 64 --filters 4,8 --dense 8 "
      "--epochs 3 --out-dir out/audio_model",
      "evaluate --model out/video_model/model.json --data out/video.csv "
      "--out-json out/video_eval.json --out-text out/video_eval.txt",
      "evaluate --model out/audio_model/model.json --data out/audio/index.csv --frames 64 "
      "--out-json out/audio_eval.json --out-text out/audio_eval.txt",
      "assemble --videos out/video.csv --audio out/audio/index.csv --out out/pairs.csv",
      "fuse --video-model out/video_model/model.json --audio-model "
      "out/audio_model/model.json --video-data out/video.csv --audio-data "
      "out/audio/index.csv --frames 64 --pairs out/pairs.csv --out-dir out/fusion",
  };
  for (const char* run : {"run1", "run2"}) {
    const std::string cwd = dir / run;
    fs::create_directories(cwd);
    const FixtureSet fx = WriteFixtureSet(cwd + "/fx", 5, 5, 7);
    o.Expect(fx.video_ids.size() == 5 && fx.audio_ids.size() == 5, "fixture set size");
    for (const std::string& step : steps) {
      const int rc = RunCli(cwd, step);
      o.Expect(rc == 0, std::string(run) + ": '" + step.substr(0, step.find(' ')) +
                            "' exited " + std::to_string(rc));
      if (rc != 0) return;
    }
  }
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir / "run1/out"))
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), dir / "run1").string());
  std::sort(files.begin(), files.end());
  std::size_t differ = 0;
  for (const std::string& f : files)
    differ += Slurp(dir / ("run1/" + f)) != Slurp(dir / ("run2/" + f));
  o.Expect(differ == 0, std::to_string(differ) + " output files differ between runs");
  o.Expect(fs::exists(dir / "run1/out/fusion/fourway.csv"), "no four-way report");
  const std::string fourway = Slurp(dir / "run1/out/fusion/fourway.csv");
  o.Expect(fourway.find("overall") != std::string::npos, "four-way report lacks a total");
  o.Note(std::to_string(files.size()) + " files byte-identical");
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"Mel scale", 1, MelScale},
      {"Filter bank", 1, FilterBank},
      {"Spectrogram oracle", 10, SpectrogramOracle},
      {"GLCM oracle", 10, GlcmOracle},
      {"oRGB", 1, Orgb},
      {"Pose solver", 30, PoseSolver},
      {"Cheekbone geometry", 5, CheekboneGeometry},
      {"Learning", 360, Learning},
      {"SMOTE", 5, SmoteCheck},
      {"Metrics & fusion", 1, MetricsAndFusion},
      {"End-to-end smoke", 300, EndToEnd},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.Expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok() && in_time;
    failed += !pass;

    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  " << c.name << "  ("
         << Fmt("%.3f", secs) << " s, budget " << c.budget_s << " s; "
         << o.checks() - o.failed() << "/" << o.checks() << " checks";
    for (const std::string& n : o.notes()) line << "; " << n;
    line << ")";
    std::cout << line.str() << "\n";
    for (const std::string& f : o.failures()) std::cout << "      " << f << "\n";
    if (!in_time) std::cout << "      over the time budget\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << "\n";
  return failed ? 1 : 0;
}
