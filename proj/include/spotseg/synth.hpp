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

// Seeded synthetic scale images with exact ground-truth spot masks.
//
// Random numbers come from the 64-bit LCG
//     x <- 6364136223846793005 * x + 1442695040888963407   (mod 2^64)
// (std::linear_congruential_engine). Uniforms use the top 53 bits of each
// state, normals use Box-Muller (cosine branch only). Three independent
// streams are seeded from splitmix64(seed + k) for k = 1 (spot placement),
// 2 (illumination) and 3 (noise), so the mask never depends on the lighting.

#ifndef SPOTSEG_SYNTH_HPP_
#define SPOTSEG_SYNTH_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "spotseg/image.hpp"

namespace spotseg
{

class SynthError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Lighting { ideal, normal, hard_exposed };

std::string to_string(Lighting lighting);
Lighting lighting_from_string(const std::string & name);

struct SceneSpec
{
  std::uint64_t seed = 1;
  int width = 128;
  int height = 128;
  int n_spots = 8;
  double spot_intensity = 0.1;
  double background_intensity = 0.8;
  Lighting lighting = Lighting::normal;
  double noise_sigma = 0.02;

  void validate() const;
};

struct Ellipse
{
  double cx = 0.0;  // column
  double cy = 0.0;  // row
  double a = 0.0;   // semi-axis along the rotated x direction
  double b = 0.0;
  double angle = 0.0;

  /// Pixel centres are at integer (col, row) coordinates.
  bool contains(double col, double row) const;
};

struct Scene
{
  RgbImage image;
  BinaryMask mask;
  std::vector<Ellipse> spots;
  /// Fraction of pixels saturated at 255.
  double saturated_fraction = 0.0;
};

/// Portable generator used by the synthesizer.
class SceneRng
{
public:
  using Engine =
    std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

  SceneRng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

private:
  Engine engine_;
};

/// Spot semi-axes are drawn from [min(w,h)/32, min(w,h)/14].
Scene generate(const SceneSpec & spec);

/// Minimum fraction of 255-valued pixels in a hard-exposed scene.
inline constexpr double kHardExposedSaturation = 0.10;

}  // namespace spotseg

#endif  // SPOTSEG_SYNTH_HPP_
