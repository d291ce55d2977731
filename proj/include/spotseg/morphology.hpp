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

#ifndef SPOTSEG_MORPHOLOGY_HPP_
#define SPOTSEG_MORPHOLOGY_HPP_

#include <cstdint>
#include <vector>

#include "spotseg/image.hpp"

namespace spotseg
{

enum class Connectivity { four = 4, eight = 8 };

/// Which side of the area threshold gets deleted.
enum class RemovalMode {
  large,  // m_i >= alpha*w*h removed (default)
  small,  // m_i <  alpha*w*h removed (classical area opening)
};

struct LabelMap
{
  /// 0 = background, components numbered 1..count in raster discovery order.
  Raster<std::int32_t> labels;
  int count = 0;
  /// areas[k] is the pixel area of label k; areas[0] is the background area.
  std::vector<std::int64_t> areas;
};

LabelMap label_components(const BinaryMask & mask, Connectivity connectivity = Connectivity::eight);

/// Deletes every component whose area crosses the alpha * width * height threshold.
BinaryMask area_open(
  const BinaryMask & mask, double alpha, RemovalMode mode = RemovalMode::large,
  Connectivity connectivity = Connectivity::eight);

}  // namespace spotseg

#endif  // SPOTSEG_MORPHOLOGY_HPP_
