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

// Ground-truth guided exhaustive search over (gamma, rho, alpha).
//
// Each image is scored on every grid combination by x11 + x22; the per-image
// argmax triples are reduced to a single deployment triple by a per-dimension
// median snapped back onto the grid.

#ifndef SPOTSEG_OPTIMIZER_HPP_
#define SPOTSEG_OPTIMIZER_HPP_

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spotseg/evaluation.hpp"
#include "spotseg/manifest.hpp"
#include "spotseg/pipeline.hpp"

namespace spotseg
{

struct Triple
{
  double gamma = 0.0;
  int rho = 0;
  double alpha = 0.0;

  bool operator==(const Triple &) const = default;
};

/// Closed search box.
struct SearchBox
{
  static constexpr double gamma_min = 3.6;
  static constexpr double gamma_max = 6.0;
  static constexpr int rho_min = 1600;
  static constexpr int rho_max = 2600;
  static constexpr double alpha_min = 0.0025;
  static constexpr double alpha_max = 0.05;
};

struct GridSpec
{
  std::vector<double> gammas;
  std::vector<int> rhos;
  std::vector<double> alphas;

  /// Nonempty, strictly increasing and, if `within_box`, inside SearchBox.
  void validate(bool within_box = true) const;
  std::size_t size() const { return gammas.size() * rhos.size() * alphas.size(); }
};

/// n values evenly spaced over each box dimension (endpoints included).
GridSpec even_grid(int n_gamma, int n_rho, int n_alpha);

/// 13 x 6 x 7 = 546 combinations.
GridSpec default_grid();

struct ScoreRow
{
  Triple triple;
  double x11 = 0.0;
  double x22 = 0.0;
  double objective = 0.0;  // x11 + x22, in [0, 200]
};

struct ImageOptimum
{
  std::string image_id;
  Triple best;
  double best_score = 0.0;
  /// Gamma-major, then rho, then alpha; one row per combination.
  std::vector<ScoreRow> table;
};

struct OptimizationResult
{
  GridSpec grid;
  std::vector<ImageOptimum> per_image;
  Triple selected;
  std::string selection_method = "median-per-dimension";
};

/// Copy of `base` with the searched triple applied.
PipelineParams with_triple(const PipelineParams & base, const Triple & t);

/// x11 + x22 of segment(img) with the given triple. Throws UndefinedMetric for
/// a ground truth without both classes.
double score_combination(
  const RgbImage & img, const BinaryMask & gt, const Triple & t, const PipelineParams & base = {});

/// Scores every combination; the contour evolution is shared between
/// combinations that differ only in rho or alpha (results are identical to
/// scoring each triple separately). Ties prefer smaller rho, then gamma, then alpha.
ImageOptimum optimize_image(
  const RgbImage & img, const BinaryMask & gt, const GridSpec & grid,
  const PipelineParams & base = {}, int workers = 1, std::string image_id = {});

/// Index of the best row under the tie-breaking rule.
std::size_t best_row(std::span<const ScoreRow> table);

/// Per-dimension median of the per-image bests (lower middle for even counts),
/// each snapped to the nearest grid value.
Triple select_median(std::span<const Triple> bests, const GridSpec & grid);

/// Previously computed score tables keyed by image id (used to resume runs).
using ScoreCache = std::map<std::string, std::vector<ScoreRow>>;

/// Optimizes each manifest entry (all need ground truth) and reduces the bests.
/// The grid must lie inside SearchBox. Entries whose complete table is in
/// `cache` are not recomputed; `on_image` sees each finished entry in order.
OptimizationResult optimize_dataset(
  const DatasetManifest & manifest, const GridSpec & grid, const PipelineParams & base = {},
  int workers = 1, const ScoreCache * cache = nullptr,
  const std::function<void(const ImageOptimum &)> & on_image = {});

}  // namespace spotseg

#endif  // SPOTSEG_OPTIMIZER_HPP_
