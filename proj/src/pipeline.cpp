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

#include "spotseg/pipeline.hpp"

#include <future>
#include <stdexcept>

namespace spotseg
{

void PipelineParams::validate() const
{
  if (!(gamma > 0.0)) throw std::invalid_argument("pipeline: gamma must be > 0");
  if (iterations < 1) throw std::invalid_argument("pipeline: iterations must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("pipeline: alpha must be in (0, 1)");
  PreprocessParams pre = preprocess;
  pre.gamma = gamma;
  pre.validate();
  solver_params().validate();
}

ChanVeseParams PipelineParams::solver_params() const
{
  ChanVeseParams s = chanvese;
  s.iterations = iterations;
  return s;
}

GrayImage dark_thread_input(const RgbImage & img, const PipelineParams & p)
{
  return median_filter(rgb_to_luminance(img), p.preprocess.median_kernel);
}

GrayImage bright_thread_input(const GrayImage & dark_input, const PipelineParams & p)
{
  return gamma_correct(dark_input, p.gamma, p.preprocess.c);
}

BinaryMask contour_mask(const GrayImage & gray, const PipelineParams & p)
{
  const auto init =
    initialize_levelset(static_cast<int>(gray.cols()), static_cast<int>(gray.rows()), p.init);
  return evolve(gray, p.solver_params(), init);
}

BinaryMask segment_dark(const RgbImage & img, const PipelineParams & p)
{
  p.validate();
  return area_open(contour_mask(dark_thread_input(img, p), p), p.alpha, p.removal, p.connectivity);
}

BinaryMask segment_bright(const RgbImage & img, const PipelineParams & p)
{
  p.validate();
  const GrayImage gray = bright_thread_input(dark_thread_input(img, p), p);
  return area_open(contour_mask(gray, p), p.alpha, p.removal, p.connectivity);
}

BinaryMask merge(const BinaryMask & a, const BinaryMask & b)
{
  require_same_shape(a, b, "merge");
  return a || b;
}

BinaryMask segment(const RgbImage & img, const PipelineParams & p)
{
  p.validate();
  auto bright = std::async(std::launch::async, [&] { return segment_bright(img, p); });
  BinaryMask dark = segment_dark(img, p);
  return merge(dark, bright.get());
}

}  // namespace spotseg
