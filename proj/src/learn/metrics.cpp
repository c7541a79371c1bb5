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

#include "learn/metrics.hpp"

#include "core/error.hpp"

namespace dfusion {
namespace {

double Ratio(std::size_t num, std::size_t den, bool& undefined) {
  if (den == 0) {
    undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double HarmonicMean(double p, double r, bool& undefined) {
  if (p + r == 0.0) {
    undefined = true;
    return 0.0;
  }
  return 2.0 * p * r / (p + r);
}

}  // namespace

Metrics ClassificationReport(std::span<const int> y_true,
                             std::span<const int> y_pred) {
  if (y_true.empty()) throw InvalidArgument("classification report: no samples");
  if (y_true.size() != y_pred.size()) {
    throw InvalidArgument("classification report: length mismatch");
  }
  Metrics m;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      throw InvalidArgument("classification report: labels must be 0 or 1");
    }
    if (t == 1 && p == 1) ++m.tp;
    if (t == 0 && p == 1) ++m.fp;
    if (t == 0 && p == 0) ++m.tn;
    if (t == 1 && p == 0) ++m.fn;
  }

  ClassMetrics& pos = m.per_class[1];
  pos.precision = Ratio(m.tp, m.tp + m.fp, m.undefined);
  pos.recall = Ratio(m.tp, m.tp + m.fn, m.undefined);
  pos.f1 = HarmonicMean(pos.precision, pos.recall, m.undefined);
  pos.support = m.tp + m.fn;

  ClassMetrics& neg = m.per_class[0];
  neg.precision = Ratio(m.tn, m.tn + m.fn, m.undefined);
  neg.recall = Ratio(m.tn, m.tn + m.fp, m.undefined);
  neg.f1 = HarmonicMean(neg.precision, neg.recall, m.undefined);
  neg.support = m.tn + m.fp;

  const double n = static_cast<double>(m.total());
  for (const ClassMetrics& c : m.per_class) {
    m.macro.precision += c.precision / 2.0;
    m.macro.recall += c.recall / 2.0;
    m.macro.f1 += c.f1 / 2.0;
    const double w = static_cast<double>(c.support) / n;
    m.weighted.precision += w * c.precision;
    m.weighted.recall += w * c.recall;
    m.weighted.f1 += w * c.f1;
  }
  m.macro.support = m.weighted.support = m.total();
  m.accuracy = static_cast<double>(m.tp + m.tn) / n;
  return m;
}

}  // namespace dfusion
