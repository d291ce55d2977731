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

#include "spotseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spotseg
{
namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr int kMaxPlacementAttempts = 1000;
constexpr double kSpotGap = 2.0;
constexpr double kGradientLow = 0.8;
constexpr double kGradientHigh = 1.2;
constexpr double kBandPeak = 3.0;
constexpr double kBandInitialWidth = 0.06;  // fraction of min(w, h)
constexpr double kBandGrowth = 1.15;

// Linear ramp kGradientLow..kGradientHigh along a random direction, spanning the image.
Raster<double> gradient_field(int width, int height, SceneRng & rng)
{
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double ux = std::cos(theta);
  const double uy = std::sin(theta);
  Raster<double> proj(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      proj(r, c) = c * ux + r * uy;
    }
  }
  const double lo = proj.minCoeff();
  const double span = std::max(proj.maxCoeff() - lo, 1e-12);
  return kGradientLow + (kGradientHigh - kGradientLow) * (proj - lo) / span;
}

}  // namespace

std::string to_string(Lighting lighting)
{
  switch (lighting) {
    case Lighting::ideal:
      return "ideal";
    case Lighting::normal:
      return "normal";
    case Lighting::hard_exposed:
      return "hard-exposed";
  }
  return "unknown";
}

Lighting lighting_from_string(const std::string & name)
{
  if (name == "ideal") return Lighting::ideal;
  if (name == "normal") return Lighting::normal;
  if (name == "hard-exposed" || name == "hard_exposed" || name == "hard") return Lighting::hard_exposed;
  throw std::invalid_argument("unknown lighting class: " + name);
}

void SceneSpec::validate() const
{
  if (width < 1 || height < 1) throw std::invalid_argument("scene: dimensions must be >= 1");
  if (n_spots < 0) throw std::invalid_argument("scene: n_spots must be >= 0");
  if (!(spot_intensity >= 0.0 && spot_intensity < background_intensity && background_intensity <= 1.0)) {
    throw std::invalid_argument("scene: need 0 <= spot_intensity < background_intensity <= 1");
  }
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("scene: noise_sigma must be >= 0");
}

bool Ellipse::contains(double col, double row) const
{
  const double dx = col - cx;
  const double dy = row - cy;
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  const double u = (dx * ca + dy * sa) / a;
  const double v = (-dx * sa + dy * ca) / b;
  return u * u + v * v <= 1.0;
}

SceneRng::SceneRng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed + stream)) {}

double SceneRng::uniform()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SceneRng::normal()
{
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Scene generate(const SceneSpec & spec)
{
  spec.validate();
  const int w = spec.width;
  const int h = spec.height;
  Scene scene;

  SceneRng place(spec.seed, 1);
  const double side = std::min(w, h);
  const double r_min = std::max(side / 16.0, 1.5);
  const double r_max = std::max(side / 8.0, r_min);
  for (int k = 0; k < spec.n_spots; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
      Ellipse e;
      e.a = place.uniform(r_min, r_max);
      e.b = place.uniform(r_min, r_max);
      e.angle = place.uniform(0.0, std::numbers::pi);
      const double reach = std::max(e.a, e.b);
      if (2.0 * reach + 2.0 >= std::min(w, h)) {
        continue;
      }
      e.cx = place.uniform(reach + 1.0, w - 1.0 - reach);
      e.cy = place.uniform(reach + 1.0, h - 1.0 - reach);
      placed = std::all_of(scene.spots.begin(), scene.spots.end(), [&](const Ellipse & o) {
        return std::hypot(e.cx - o.cx, e.cy - o.cy) >= reach + std::max(o.a, o.b) + kSpotGap;
      });
      if (placed) {
        scene.spots.push_back(e);
      }
    }
    if (!placed) {
      throw SynthError(
        "could not place spot " + std::to_string(k + 1) + " of " + std::to_string(spec.n_spots) +
        " after " + std::to_string(kMaxPlacementAttempts) + " attempts; scene too dense");
    }
  }

  scene.mask = BinaryMask::Zero(h, w);
  for (const Ellipse & e : scene.spots) {
    const double reach = std::max(e.a, e.b);
    const int r0 = std::max(0, static_cast<int>(std::floor(e.cy - reach)));
    const int r1 = std::min(h - 1, static_cast<int>(std::ceil(e.cy + reach)));
    const int c0 = std::max(0, static_cast<int>(std::floor(e.cx - reach)));
    const int c1 = std::min(w - 1, static_cast<int>(std::ceil(e.cx + reach)));
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        if (e.contains(c, r)) scene.mask(r, c) = true;
      }
    }
  }

  const Raster<double> base = scene.mask.select(
    Raster<double>::Constant(h, w, spec.spot_intensity),
    Raster<double>::Constant(h, w, spec.background_intensity));

  SceneRng noise_rng(spec.seed, 3);
  Raster<double> noise(h, w);
  for (Eigen::Index i = 0; i < noise.size(); ++i) {
    noise.coeffRef(i) = spec.noise_sigma * noise_rng.normal();
  }

  SceneRng light(spec.seed, 2);
  auto render = [&](const Raster<double> & field) {
    return quantize_gray(((base * field) + noise).max(0.0).min(1.0));
  };

  Gray8 gray;
  switch (spec.lighting) {
    case Lighting::ideal:
      gray = render(Raster<double>::Ones(h, w));
      break;
    case Lighting::normal:
      gray = render(gradient_field(w, h, light));
      break;
    case Lighting::hard_exposed: {
      const Raster<double> ramp = gradient_field(w, h, light);
      // Specular band: Gaussian ridge along a random line through the central half.
      const double theta = light.uniform(0.0, std::numbers::pi);
      const double px = light.uniform(0.25 * w, 0.75 * w);
      const double py = light.uniform(0.25 * h, 0.75 * h);
      const double nx = -std::sin(theta);
      const double ny = std::cos(theta);
      Raster<double> dist(h, w);
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          dist(r, c) = (c - px) * nx + (r - py) * ny;
        }
      }
      double sigma = kBandInitialWidth * side;
      const auto needed = static_cast<Eigen::Index>(std::ceil(kHardExposedSaturation * w * h));
      for (;;) {
        const Raster<double> field = ramp + kBandPeak * (-dist.square() / (2.0 * sigma * sigma)).exp();
        gray = render(field);
        if ((gray == std::uint8_t{255}).count() >= needed) break;
        sigma *= kBandGrowth;
        if (sigma > 10.0 * side) {
          throw SynthError("hard-exposed scene: background too dark to saturate the specular band");
        }
      }
      break;
    }
  }
  scene.saturated_fraction =
    static_cast<double>((gray == std::uint8_t{255}).count()) / static_cast<double>(gray.size());
  scene.image = gray_to_rgb(gray);
  return scene;
}

}  // namespace spotseg
