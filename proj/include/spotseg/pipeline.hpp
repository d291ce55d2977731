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

#ifndef SPOTSEG_PIPELINE_HPP_
#define SPOTSEG_PIPELINE_HPP_

#include "spotseg/chanvese.hpp"
#include "spotseg/image.hpp"
#include "spotseg/morphology.hpp"
#include "spotseg/preprocess.hpp"

namespace spotseg
{

/// The searched triple (gamma, rho, alpha) plus the fixed stage settings.
/// `gamma` and `iterations` take precedence over preprocess.gamma and
/// chanvese.iterations, which are ignored by the pipeline.
struct PipelineParams
{
  double gamma = 4.8;
  int iterations = 2000;
  double alpha = 0.05;
  PreprocessParams preprocess{};
  ChanVeseParams chanvese{};
  InitScheme init = InitScheme::checkerboard;
  RemovalMode removal = RemovalMode::large;
  Connectivity connectivity = Connectivity::eight;

  void validate() const;
  ChanVeseParams solver_params() const;
};

/// Gray conversion followed by the median filter; input of the dark thread.
GrayImage dark_thread_input(const RgbImage & img, const PipelineParams & p);
/// Power-law correction of the dark-thread input; input of the bright thread.
GrayImage bright_thread_input(const GrayImage & dark_input, const PipelineParams & p);

/// Contour mask (before area opening) for an already-preprocessed raster.
BinaryMask contour_mask(const GrayImage & gray, const PipelineParams & p);

BinaryMask segment_dark(const RgbImage & img, const PipelineParams & p);
BinaryMask segment_bright(const RgbImage & img, const PipelineParams & p);

/// Pixelwise OR.
BinaryMask merge(const BinaryMask & a, const BinaryMask & b);

/// merge(segment_dark, segment_bright); the bright thread runs on a second thread.
BinaryMask segment(const RgbImage & img, const PipelineParams & p);

}  // namespace spotseg

#endif  // SPOTSEG_PIPELINE_HPP_
