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

#ifndef SPOTSEG_EVALUATION_HPP_
#define SPOTSEG_EVALUATION_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spotseg/image.hpp"

namespace spotseg
{

/// Thrown when a percentage is requested for a ground-truth class with no pixels.
class UndefinedMetric : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Confusion matrix normalized per ground-truth class (column), in percent.
///
///                   GT background   GT foreground
///   seg background       x11             x12
///   seg foreground       x21             x22
///
/// x11/x21 are empty when the ground truth has no background, x12/x22 when it
/// has no foreground.
struct ConfusionMatrix
{
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  std::int64_t fp = 0;
  std::int64_t tp = 0;
  std::optional<double> x11, x12, x21, x22;

  bool background_defined() const { return tn + fp > 0; }
  bool foreground_defined() const { return tp + fn > 0; }
  bool fully_defined() const { return background_defined() && foreground_defined(); }
  std::int64_t total() const { return tn + fn + fp + tp; }
};

/// Builds the percentages from raw counts.
ConfusionMatrix confusion_from_counts(std::int64_t tn, std::int64_t fn, std::int64_t fp, std::int64_t tp);

ConfusionMatrix confusion(const BinaryMask & gt, const BinaryMask & seg);

/// (x11 + x22) / 2.
double performance(double x11, double x22);
double performance(const ConfusionMatrix & cm);

struct Metrics
{
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;
};

/// precision is 1 when there are neither predictions nor ground-truth spots,
/// 0 when there are no predictions but there are spots.
Metrics classical_metrics(const ConfusionMatrix & cm);
Metrics classical_metrics(const BinaryMask & gt, const BinaryMask & seg);

struct OverlayColors
{
  static constexpr std::array<std::uint8_t, 3> false_negative{255, 0, 0};
  static constexpr std::array<std::uint8_t, 3> true_positive{255, 255, 0};
  static constexpr std::array<std::uint8_t, 3> false_positive{0, 255, 0};
  static constexpr std::array<std::uint8_t, 3> true_negative{0, 0, 0};
};

/// Comparison image: missed spots red, hits yellow, false detections green.
RgbImage overlay(const BinaryMask & gt, const BinaryMask & seg);

struct Statistic
{
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
};

/// Fixed order in which summaries list their metrics.
inline constexpr std::array<std::string_view, 8> kSummaryMetrics{
  "x11", "x12", "x21", "x22", "precision", "recall", "fmeasure", "performance"};

struct SummaryStats
{
  std::size_t samples = 0;
  /// Samples with an undefined column; left out of every statistic.
  std::size_t excluded = 0;
  /// Indexed like kSummaryMetrics. Empty if every sample was excluded.
  std::vector<Statistic> metrics;

  const Statistic & at(std::string_view name) const;
};

/// mean / median / stddev / min / max of a sample; median averages the middle
/// pair for even counts.
Statistic describe(std::span<const double> values);

SummaryStats aggregate(std::span<const ConfusionMatrix> samples);

}  // namespace spotseg

#endif  // SPOTSEG_EVALUATION_HPP_
