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

#include <algorithm>

#include "doctest.h"
#include "spotseg/pipeline.hpp"
#include "spotseg/synth.hpp"

using namespace spotseg;

namespace
{

// Fraction of each spot's pixels covered by `mask`; returns the minimum.
double worst_spot_coverage(const Scene & sc, const BinaryMask & mask)
{
  double worst = 1.0;
  for (const Ellipse & e : sc.spots) {
    double in = 0, hit = 0;
    for (int r = 0; r < mask.rows(); ++r) {
      for (int c = 0; c < mask.cols(); ++c) {
        if (e.contains(c, r)) {
          ++in;
          hit += mask(r, c);
        }
      }
    }
    if (in > 0) worst = std::min(worst, hit / in);
  }
  return worst;
}

RgbImage flat(std::uint8_t v) { return gray_to_rgb(Gray8::Constant(48, 48, v)); }

}  // namespace

TEST_CASE("spots under uneven lighting are found")
{
  PipelineParams p;
  for (Lighting l : {Lighting::normal, Lighting::hard_exposed}) {
    SceneSpec s;
    s.seed = 3;
    s.lighting = l;
    const Scene sc = generate(s);
    CAPTURE(to_string(l));
    CHECK(worst_spot_coverage(sc, segment(sc.image, p)) >= 0.8);
  }
}

TEST_CASE("no-signal images give (near) empty masks")
{
  PipelineParams p;
  SceneSpec s;
  s.n_spots = 0;
  const Scene blank = generate(s);
  CHECK(segment(blank.image, p).count() <= blank.mask.size() / 100);
  CHECK(segment(flat(128), p).count() <= 48 * 48 / 100);
  CHECK(segment_bright(flat(255), p).count() <= 48 * 48 / 100);
}

TEST_CASE("pipeline algebra")
{
  PipelineParams p;
  p.iterations = 400;
  SceneSpec s;
  s.seed = 12;
  s.width = s.height = 64;
  s.n_spots = 4;
  const Scene sc = generate(s);

  const BinaryMask dark = segment_dark(sc.image, p);
  const BinaryMask bright = segment_bright(sc.image, p);
  const BinaryMask both = segment(sc.image, p);
  CHECK((both == (dark || bright)).all());
  CHECK((both >= dark).all());
  CHECK((both >= bright).all());

  p.gamma = 1.0;
  CHECK((segment_bright(sc.image, p) == segment_dark(sc.image, p)).all());
  CHECK((segment(sc.image, p) == segment_dark(sc.image, p)).all());
}

TEST_CASE("merge")
{
  BinaryMask m = BinaryMask::Zero(3, 3);
  m(1, 2) = true;
  const BinaryMask none = BinaryMask::Zero(3, 3);
  CHECK((merge(none, m) == m).all());
  CHECK((merge(m, m) == m).all());
  BinaryMask other = BinaryMask::Zero(3, 3);
  other(0, 0) = true;
  CHECK(merge(m, other).count() == 2);
  CHECK(merge(none, none).count() == 0);
  CHECK_THROWS_AS(merge(m, BinaryMask::Zero(3, 4)), std::invalid_argument);
}

TEST_CASE("pipeline parameters")
{
  PipelineParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.solver_params().iterations == p.iterations);
  p.alpha = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.gamma = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.preprocess.median_kernel = 4;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
