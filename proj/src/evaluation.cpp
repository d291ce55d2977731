// Copyright 2026 The spotseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spotseg/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spotseg
{

ConfusionMatrix confusion_from_counts(std::int64_t tn, std::int64_t fn, std::int64_t fp, std::int64_t tp)
{
  ConfusionMatrix cm;
  cm.tn = tn;
  cm.fn = fn;
  cm.fp = fp;
  cm.tp = tp;
  if (cm.background_defined()) {
    const double bg = static_cast<double>(tn + fp);
    cm.x11 = 100.0 * static_cast<double>(tn) / bg;
    cm.x21 = 100.0 * static_cast<double>(fp) / bg;
  }
  if (cm.foreground_defined()) {
    const double fg = static_cast<double>(tp + fn);
    cm.x22 = 100.0 * static_cast<double>(tp) / fg;
    cm.x12 = 100.0 * static_cast<double>(fn) / fg;
  }
  return cm;
}

ConfusionMatrix confusion(const BinaryMask & gt, const BinaryMask & seg)
{
  require_same_shape(gt, seg, "confusion");
  const auto tp = static_cast<std::int64_t>((gt && seg).count());
  const auto fn = static_cast<std::int64_t>((gt && !seg).count());
  const auto fp = static_cast<std::int64_t>((!gt && seg).count());
  const auto tn = static_cast<std::int64_t>(gt.size()) - tp - fn - fp;
  return confusion_from_counts(tn, fn, fp, tp);
}

double performance(double x11, double x22) { return (x11 + x22) / 2.0; }

double performance(const ConfusionMatrix & cm)
{
  if (!cm.x11 || !cm.x22) {
    throw UndefinedMetric("performance: ground truth lacks a background or foreground class");
  }
  return performance(*cm.x11, *cm.x22);
}

Metrics classical_metrics(const ConfusionMatrix & cm)
{
  Metrics m;
  const auto predicted = cm.tp + cm.fp;
  const auto actual = cm.tp + cm.fn;
  if (predicted > 0) {
    m.precision = static_cast<double>(cm.tp) / static_cast<double>(predicted);
  } else {
    m.precision = actual == 0 ? 1.0 : 0.0;
  }
  m.recall = actual > 0 ? static_cast<double>(cm.tp) / static_cast<double>(actual) : 0.0;
  const double sum = m.precision + m.recall;
  m.fmeasure = sum > 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
  return m;
}

Metrics classical_metrics(const BinaryMask & gt, const BinaryMask & seg)
{
  return classical_metrics(confusion(gt, seg));
}

RgbImage overlay(const BinaryMask & gt, const BinaryMask & seg)
{
  require_same_shape(gt, seg, "overlay");
  RgbImage out(static_cast<int>(gt.cols()), static_cast<int>(gt.rows()));
  for (int r = 0; r < out.height; ++r) {
    for (int c = 0; c < out.width; ++c) {
      const bool g = gt(r, c);
      const bool s = seg(r, c);
      const auto & color = g ? (s ? OverlayColors::true_positive : OverlayColors::false_negative)
                             : (s ? OverlayColors::false_positive : OverlayColors::true_negative);
      for (int ch = 0; ch < 3; ++ch) {
        out.at(r, c, ch) = color[static_cast<std::size_t>(ch)];
      }
    }
  }
  return out;
}

const Statistic & SummaryStats::at(std::string_view name) const
{
  const auto it = std::find(kSummaryMetrics.begin(), kSummaryMetrics.end(), name);
  if (it == kSummaryMetrics.end()) {
    throw std::out_of_range("unknown summary metric: " + std::string(name));
  }
  const auto idx = static_cast<std::size_t>(it - kSummaryMetrics.begin());
  if (idx >= metrics.size()) {
    throw std::out_of_range("summary has no retained samples");
  }
  return metrics[idx];
}

Statistic describe(std::span<const double> values)
{
  if (values.empty()) {
    throw std::invalid_argument("describe: empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  Statistic s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (const double v : values) {
    ss += (v - s.mean) * (v - s.mean);
  }
  s.stddev = std::sqrt(ss / static_cast<double>(n));
  return s;
}

SummaryStats aggregate(std::span<const ConfusionMatrix> samples)
{
  if (samples.empty()) {
    throw std::invalid_argument("aggregate: no samples");
  }
  SummaryStats out;
  out.samples = samples.size();
  std::vector<std::vector<double>> columns(kSummaryMetrics.size());
  for (const auto & cm : samples) {
    if (!cm.fully_defined()) {
      ++out.excluded;
      continue;
    }
    const Metrics m = classical_metrics(cm);
    const double row[] = {*cm.x11,     *cm.x12,  *cm.x21,    *cm.x22,
                          m.precision, m.recall, m.fmeasure, performance(cm)};
    for (std::size_t k = 0; k < columns.size(); ++k) {
      columns[k].push_back(row[k]);
    }
  }
  if (out.excluded < out.samples) {
    for (const auto & col : columns) {
      out.metrics.push_back(describe(col));
    }
  }
  return out;
}

}  // namespace spotseg
