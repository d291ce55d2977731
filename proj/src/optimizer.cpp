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

#include "spotseg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "spotseg/image_io.hpp"
#include "spotseg/parallel.hpp"

namespace spotseg
{
namespace
{

template <typename T>
void check_axis(const std::vector<T> & values, T lo, T hi, bool within_box, const char * name)
{
  if (values.empty()) {
    throw std::invalid_argument(std::string("grid: ") + name + " list is empty");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i - 1] < values[i])) {
      throw std::invalid_argument(std::string("grid: ") + name + " must be strictly increasing");
    }
  }
  if (within_box && (values.front() < lo || values.back() > hi)) {
    throw std::invalid_argument(std::string("grid: ") + name + " outside the search box");
  }
}

// Rounds to 12 decimals so evenly spaced values print as their decimal form.
double tidy(double v) { return std::round(v * 1e12) / 1e12; }

std::vector<double> linspace(double lo, double hi, int n)
{
  if (n < 1) throw std::invalid_argument("grid: axis needs at least one value");
  if (n == 1) return {lo};
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    out.push_back(tidy(lo + (hi - lo) * k / (n - 1)));
  }
  return out;
}

// Lexicographic (rho, gamma, alpha); smaller wins ties.
auto tie_key(const Triple & t) { return std::make_tuple(t.rho, t.gamma, t.alpha); }

template <typename T>
T snap(T value, const std::vector<T> & axis)
{
  T best = axis.front();
  for (const T v : axis) {
    if (std::abs(static_cast<double>(v) - static_cast<double>(value)) <
        std::abs(static_cast<double>(best) - static_cast<double>(value))) {
      best = v;
    }
  }
  return best;
}

template <typename T>
T lower_median(std::vector<T> values)
{
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

}  // namespace

void GridSpec::validate(bool within_box) const
{
  check_axis(gammas, SearchBox::gamma_min, SearchBox::gamma_max, within_box, "gammas");
  check_axis(rhos, SearchBox::rho_min, SearchBox::rho_max, within_box, "rhos");
  check_axis(alphas, SearchBox::alpha_min, SearchBox::alpha_max, within_box, "alphas");
  if (!within_box) {
    if (gammas.front() <= 0.0) throw std::invalid_argument("grid: gammas must be > 0");
    if (rhos.front() < 1) throw std::invalid_argument("grid: rhos must be >= 1");
    if (alphas.front() <= 0.0 || alphas.back() >= 1.0) {
      throw std::invalid_argument("grid: alphas must be in (0, 1)");
    }
  }
}

GridSpec even_grid(int n_gamma, int n_rho, int n_alpha)
{
  GridSpec g;
  g.gammas = linspace(SearchBox::gamma_min, SearchBox::gamma_max, n_gamma);
  for (const double r : linspace(SearchBox::rho_min, SearchBox::rho_max, n_rho)) {
    g.rhos.push_back(static_cast<int>(std::lround(r)));
  }
  g.alphas = linspace(SearchBox::alpha_min, SearchBox::alpha_max, n_alpha);
  return g;
}

GridSpec default_grid() { return even_grid(13, 6, 7); }

PipelineParams with_triple(const PipelineParams & base, const Triple & t)
{
  PipelineParams p = base;
  p.gamma = t.gamma;
  p.iterations = t.rho;
  p.alpha = t.alpha;
  return p;
}

double score_combination(
  const RgbImage & img, const BinaryMask & gt, const Triple & t, const PipelineParams & base)
{
  const BinaryMask seg = segment(img, with_triple(base, t));
  const ConfusionMatrix cm = confusion(gt, seg);
  if (!cm.fully_defined()) {
    throw UndefinedMetric("score_combination: ground truth needs both background and foreground");
  }
  return *cm.x11 + *cm.x22;
}

std::size_t best_row(std::span<const ScoreRow> table)
{
  if (table.empty()) throw std::invalid_argument("best_row: empty score table");
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto & row = table[i];
    const auto & cur = table[best];
    if (row.objective > cur.objective ||
        (row.objective == cur.objective && tie_key(row.triple) < tie_key(cur.triple))) {
      best = i;
    }
  }
  return best;
}

ImageOptimum optimize_image(
  const RgbImage & img, const BinaryMask & gt, const GridSpec & grid, const PipelineParams & base,
  int workers, std::string image_id)
{
  grid.validate(false);
  if (gt.rows() != img.height || gt.cols() != img.width) {
    throw std::invalid_argument("optimize_image: ground truth and image sizes differ for '" + image_id + "'");
  }
  {
    const auto fg = gt.count();
    if (fg == 0 || fg == gt.size()) {
      throw UndefinedMetric("optimize_image: ground truth of '" + image_id + "' lacks a class");
    }
  }
  PipelineParams checked = with_triple(base, {grid.gammas.front(), grid.rhos.front(), grid.alphas.front()});
  checked.validate();

  const GrayImage dark = dark_thread_input(img, base);
  const auto init = initialize_levelset(img.width, img.height, base.init);
  const ChanVeseParams solver = base.solver_params();

  // Slot 0 is the dark thread, slot 1 + g the bright thread for gammas[g].
  std::vector<std::vector<BinaryMask>> contours(1 + grid.gammas.size());
  parallel_for(contours.size(), workers, [&](std::size_t slot) {
    if (slot == 0) {
      contours[0] = evolve_checkpoints(dark, solver, init, grid.rhos);
    } else {
      const GrayImage bright = bright_thread_input(dark, with_triple(base, {grid.gammas[slot - 1], 1, 0.5}));
      contours[slot] = evolve_checkpoints(bright, solver, init, grid.rhos);
    }
  });

  const std::size_t n_rho = grid.rhos.size();
  const std::size_t n_alpha = grid.alphas.size();
  auto opened = [&](const BinaryMask & m, double alpha) {
    return area_open(m, alpha, base.removal, base.connectivity);
  };
  std::vector<BinaryMask> dark_opened(n_rho * n_alpha);
  for (std::size_t r = 0; r < n_rho; ++r) {
    for (std::size_t a = 0; a < n_alpha; ++a) {
      dark_opened[r * n_alpha + a] = opened(contours[0][r], grid.alphas[a]);
    }
  }

  ImageOptimum out;
  out.image_id = std::move(image_id);
  out.table.resize(grid.size());
  parallel_for(grid.gammas.size(), workers, [&](std::size_t g) {
    for (std::size_t r = 0; r < n_rho; ++r) {
      for (std::size_t a = 0; a < n_alpha; ++a) {
        const BinaryMask seg =
          merge(dark_opened[r * n_alpha + a], opened(contours[1 + g][r], grid.alphas[a]));
        const ConfusionMatrix cm = confusion(gt, seg);
        ScoreRow & row = out.table[(g * n_rho + r) * n_alpha + a];
        row.triple = {grid.gammas[g], grid.rhos[r], grid.alphas[a]};
        row.x11 = *cm.x11;
        row.x22 = *cm.x22;
        row.objective = row.x11 + row.x22;
      }
    }
  });

  const auto& best = out.table[best_row(out.table)];
  out.best = best.triple;
  out.best_score = best.objective;
  return out;
}

Triple select_median(std::span<const Triple> bests, const GridSpec & grid)
{
  if (bests.empty()) throw std::invalid_argument("select_median: no per-image bests");
  std::vector<double> gammas, alphas;
  std::vector<int> rhos;
  for (const auto & t : bests) {
    gammas.push_back(t.gamma);
    rhos.push_back(t.rho);
    alphas.push_back(t.alpha);
  }
  return {snap(lower_median(gammas), grid.gammas), snap(lower_median(rhos), grid.rhos),
          snap(lower_median(alphas), grid.alphas)};
}

OptimizationResult optimize_dataset(
  const DatasetManifest & manifest, const GridSpec & grid, const PipelineParams & base, int workers,
  const ScoreCache * cache, const std::function<void(const ImageOptimum &)> & on_image)
{
  if (manifest.entries.empty()) {
    throw std::invalid_argument("optimize_dataset: manifest has no entries");
  }
  manifest.require_ground_truth();
  grid.validate(true);

  OptimizationResult result;
  result.grid = grid;
  for (const auto & entry : manifest.entries) {
    if (cache) {
      const auto it = cache->find(entry.id);
      if (it != cache->end() && it->second.size() == grid.size()) {
        ImageOptimum cached;
        cached.image_id = entry.id;
        cached.table = it->second;
        bool complete = true;
        std::size_t i = 0;
        for (const double g : grid.gammas) {
          for (const int r : grid.rhos) {
            for (const double a : grid.alphas) {
              complete = complete && cached.table[i++].triple == Triple{g, r, a};
            }
          }
        }
        if (complete) {
          const auto & best = cached.table[best_row(cached.table)];
          cached.best = best.triple;
          cached.best_score = best.objective;
          result.per_image.push_back(std::move(cached));
          if (on_image) on_image(result.per_image.back());
          continue;
        }
      }
    }
    const RgbImage img = load_rgb(entry.image);
    const BinaryMask gt = load_mask(*entry.ground_truth);
    result.per_image.push_back(optimize_image(img, gt, grid, base, workers, entry.id));
    if (on_image) on_image(result.per_image.back());
  }

  std::vector<Triple> bests;
  for (const auto & p : result.per_image) bests.push_back(p.best);
  result.selected = select_median(bests, grid);
  return result;
}

}  // namespace spotseg
