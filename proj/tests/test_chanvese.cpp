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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spotseg/chanvese.hpp"

using namespace spotseg;

namespace
{

GrayImage disk_image(double inside, double outside)
{
  const BinaryMask d = oracle::disk(64, 32, 32, 16);
  return d.select(GrayImage::Constant(64, 64, inside), GrayImage::Constant(64, 64, outside));
}

}  // namespace

TEST_CASE("level set initialization")
{
  const LevelSet cb = initialize_levelset(20, 20, InitScheme::checkerboard);
  CHECK(cb(0, 0) == 0.0);
  CHECK(cb(5, 5) == doctest::Approx(1.0));
  CHECK(cb(5, 15) == doctest::Approx(-1.0));

  const LevelSet circle = initialize_levelset(100, 100, InitScheme::centered_circle);
  CHECK(circle(50, 50) == doctest::Approx(100.0 / 3.0));
  const LevelSet big = initialize_levelset(300, 300, InitScheme::centered_circle);
  CHECK(big(150, 50) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(big(0, 0) < 0.0);
}

TEST_CASE("regularized heaviside and dirac")
{
  CHECK(heaviside(0.0, 1.0) == 0.5);
  CHECK(heaviside(1e9, 1.0) == doctest::Approx(1.0));
  CHECK(dirac(0.0, 1.0) == doctest::Approx(1.0 / M_PI));
  // dirac is the derivative of heaviside
  const double h = 1e-6;
  CHECK(dirac(0.7, 1.3) == doctest::Approx((heaviside(0.7 + h, 1.3) - heaviside(0.7 - h, 1.3)) / (2 * h)));
}

TEST_CASE("region means")
{
  SUBCASE("constant image")
  {
    const GrayImage img = GrayImage::Constant(5, 5, 0.7);
    const RegionMeans m = region_means(img, LevelSet::Random(5, 5), 1.0);
    CHECK(m.inside == doctest::Approx(0.7));
    CHECK(m.outside == doctest::Approx(0.7));
  }
  SUBCASE("sharp limit on an exact disk")
  {
    const BinaryMask d = oracle::disk(64, 32, 32, 16);
    const GrayImage img = d.cast<double>();
    LevelSet phi(64, 64);
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 64; ++c) phi(r, c) = 16.0 - std::hypot(c - 32.0, r - 32.0);
    }
    // pixels exactly on the circle have H = 1/2; nudge them inside
    phi = (phi == 0.0).select(1e-3, phi);
    const RegionMeans m = region_means(img, phi, 1e-6);
    CHECK(m.inside == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m.outside == doctest::Approx(0.0).epsilon(1e-6));
  }
  SUBCASE("phi == +1 gives the image mean on both sides")
  {
    const GrayImage img = GrayImage::Random(8, 8).abs();
    const RegionMeans m = region_means(img, LevelSet::Ones(8, 8), 1.0);
    CHECK(m.inside == doctest::Approx(img.mean()));
    CHECK(m.outside == doctest::Approx(img.mean()));
  }
  SUBCASE("matches a double-loop summation")
  {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    GrayImage img(8, 8);
    LevelSet phi(8, 8);
    for (int i = 0; i < 64; ++i) {
      img.data()[i] = (u(rng) + 2.0) / 4.0;
      phi.data()[i] = u(rng);
    }
    double si = 0, wi = 0, so = 0, wo = 0;
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        const double h = 0.5 * (1 + 2 / M_PI * std::atan(phi(r, c) / 0.8));
        si += h * img(r, c);
        wi += h;
        so += (1 - h) * img(r, c);
        wo += 1 - h;
      }
    }
    const RegionMeans m = region_means(img, phi, 0.8);
    CHECK(std::abs(m.inside - si / wi) < 1e-12);
    CHECK(std::abs(m.outside - so / wo) < 1e-12);
  }
}

TEST_CASE("curvature")
{
  SUBCASE("plane has zero curvature in the interior")
  {
    LevelSet phi(20, 30);
    for (int r = 0; r < 20; ++r) {
      for (int c = 0; c < 30; ++c) phi(r, c) = 0.3 * c - 1.7 * r + 2.0;
    }
    const LevelSet k = curvature(phi);
    CHECK(k.block(2, 2, 16, 26).abs().maxCoeff() < 1e-6);
  }
  SUBCASE("cone has curvature 1/r")
  {
    LevelSet phi(81, 81);
    for (int r = 0; r < 81; ++r) {
      for (int c = 0; c < 81; ++c) phi(r, c) = std::hypot(c - 40.0, r - 40.0);
    }
    const LevelSet k = curvature(phi);
    CHECK(k(40, 60) == doctest::Approx(1.0 / 20.0).epsilon(0.02));
    CHECK(k(10, 40) == doctest::Approx(1.0 / 30.0).epsilon(0.02));
  }
  SUBCASE("bounded by 2 on arbitrary fields")
  {
    const LevelSet k = curvature(LevelSet::Random(16, 16));
    CHECK(k.abs().maxCoeff() <= 2.0 + 1e-12);
  }
}

TEST_CASE("disk benchmark")
{
  const GrayImage img = disk_image(0.1, 0.9);
  const BinaryMask truth = oracle::disk(64, 32, 32, 16);
  ChanVeseParams p;
  p.iterations = 500;
  for (double mu : {0.1, 0.2}) {
    p.mu = mu;
    const BinaryMask m = evolve(img, p, initialize_levelset(64, 64, InitScheme::checkerboard));
    CHECK(oracle::dice(m, truth) >= 0.95);
  }
  CHECK(oracle::dice(segment_gray(img, 500), truth) >= 0.95);
  // the circle starts further from the disk and needs longer
  p.iterations = 2000;
  const BinaryMask circle_init = evolve(img, p, initialize_levelset(64, 64, InitScheme::centered_circle));
  CHECK(oracle::dice(circle_init, truth) >= 0.95);
}

TEST_CASE("energy is non-increasing over 100-iteration windows on the disk benchmark")
{
  const GrayImage img = disk_image(0.1, 0.9);
  ChanVeseParams p;
  p.iterations = 1000;
  LevelSet phi = initialize_levelset(64, 64, InitScheme::checkerboard);
  std::vector<double> energy{chan_vese_energy(img, phi, p)};
  evolve_levelset<GrayImage, double>(img, p, phi, [&](int it, const LevelSet & cur) {
    if (it % 100 == 0) energy.push_back(chan_vese_energy(img, cur, p));
  });
  REQUIRE(energy.size() == 11);
  for (std::size_t i = 1; i < energy.size(); ++i) {
    CHECK(energy[i] <= energy[i - 1] + 1e-9);
  }
}

TEST_CASE("darker-region rule")
{
  SUBCASE("all-zeros image gives an empty mask")
  {
    CHECK(segment_gray(GrayImage::Zero(32, 32), 50).count() == 0);
  }
  SUBCASE("constant image gives at most 1% foreground after 200 iterations")
  {
    CHECK(segment_gray(GrayImage::Constant(40, 40, 0.5), 200).count() <= 16);
  }
  SUBCASE("bright disk on dark background selects the background")
  {
    const BinaryMask truth = oracle::disk(64, 32, 32, 16);
    const BinaryMask m = segment_gray(disk_image(0.9, 0.1), 500);
    const auto overlap = (m && truth).count();
    CHECK(overlap <= truth.count() / 20);
    CHECK(oracle::dice(m, !truth) >= 0.95);
  }
  SUBCASE("complement symmetry")
  {
    // Inverting intensities swaps which region is darker, so the masks are
    // (near) complements of each other.
    const GrayImage img = disk_image(0.2, 0.7);
    const BinaryMask a = segment_gray(img, 1000);
    const BinaryMask b = segment_gray((1.0 - img).eval(), 1000);
    const auto diff = (a == b).count();
    CHECK(static_cast<double>(diff) / a.size() <= 0.02);
  }
}

TEST_CASE("checkpoints equal separate runs")
{
  const GrayImage img = disk_image(0.3, 0.6) + 0.05 * GrayImage::Random(64, 64);
  ChanVeseParams p;
  const LevelSet init = initialize_levelset(64, 64, InitScheme::checkerboard);
  const std::vector<int> cps{3, 40, 41, 150};
  const auto snaps = evolve_checkpoints(img, p, init, cps);
  REQUIRE(snaps.size() == cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    p.iterations = cps[i];
    CHECK((snaps[i] == evolve(img, p, init)).all());
  }
  CHECK_THROWS_AS(evolve_checkpoints(img, p, init, {5, 5}), std::invalid_argument);
  CHECK_THROWS_AS(evolve_checkpoints(img, p, init, {}), std::invalid_argument);
}

TEST_CASE("solver errors")
{
  GrayImage img = GrayImage::Constant(8, 8, 0.5);
  const LevelSet init = initialize_levelset(8, 8, InitScheme::checkerboard);
  ChanVeseParams p;
  p.iterations = 3;
  CHECK_THROWS_AS(evolve(img, p, LevelSet(initialize_levelset(9, 8, InitScheme::checkerboard))),
                  std::invalid_argument);
  img(3, 3) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(evolve(img, p, init), NumericalFailure);
  p.dt = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("single precision instantiation")
{
  const Raster<float> img = disk_image(0.1, 0.9).cast<float>();
  ChanVeseParams p;
  p.iterations = 500;
  const BinaryMask m = evolve(img, p, initialize_levelset<float>(64, 64, InitScheme::checkerboard));
  CHECK(oracle::dice(m, oracle::disk(64, 32, 32, 16)) >= 0.95);
}
