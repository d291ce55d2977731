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

#include "spotseg/morphology.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace spotseg
{

LabelMap label_components(const BinaryMask & mask, Connectivity connectivity)
{
  const auto rows = static_cast<int>(mask.rows());
  const auto cols = static_cast<int>(mask.cols());
  LabelMap out;
  out.labels = Raster<std::int32_t>::Zero(rows, cols);
  out.areas.push_back(static_cast<std::int64_t>(mask.size() - mask.count()));

  static constexpr int kOffsets8[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                          {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  static constexpr int kOffsets4[4][2] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  const bool eight = connectivity == Connectivity::eight;
  const int n_offsets = eight ? 8 : 4;

  std::vector<std::pair<int, int>> stack;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!mask(r, c) || out.labels(r, c) != 0) {
        continue;
      }
      const int label = ++out.count;
      std::int64_t area = 0;
      out.labels(r, c) = label;
      stack.assign(1, {r, c});
      while (!stack.empty()) {
        const auto [pr, pc] = stack.back();
        stack.pop_back();
        ++area;
        for (int k = 0; k < n_offsets; ++k) {
          const int nr = pr + (eight ? kOffsets8[k][0] : kOffsets4[k][0]);
          const int nc = pc + (eight ? kOffsets8[k][1] : kOffsets4[k][1]);
          if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
          if (mask(nr, nc) && out.labels(nr, nc) == 0) {
            out.labels(nr, nc) = label;
            stack.emplace_back(nr, nc);
          }
        }
      }
      out.areas.push_back(area);
    }
  }
  return out;
}

BinaryMask area_open(
  const BinaryMask & mask, double alpha, RemovalMode mode, Connectivity connectivity)
{
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("area_open: alpha must be in (0, 1), got " + std::to_string(alpha));
  }
  const LabelMap map = label_components(mask, connectivity);
  // Relative slack so that e.g. 0.01 * 700 * 700 compares as exactly 4900.
  const double threshold =
    alpha * static_cast<double>(mask.cols()) * static_cast<double>(mask.rows()) * (1.0 - 1e-12);
  std::vector<bool> keep(map.areas.size(), false);
  for (std::size_t k = 1; k < map.areas.size(); ++k) {
    const bool crosses = static_cast<double>(map.areas[k]) >= threshold;
    keep[k] = mode == RemovalMode::large ? !crosses : crosses;
  }
  BinaryMask out(mask.rows(), mask.cols());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    out.coeffRef(i) = keep[static_cast<std::size_t>(map.labels.coeff(i))];
  }
  return out;
}

}  // namespace spotseg
