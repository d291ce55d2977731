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

#ifndef SPOTSEG_IMAGE_HPP_
#define SPOTSEG_IMAGE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace spotseg
{

/// Row-major raster indexed (row, col). All rasters in the library use this layout.
template <typename Scalar>
using Raster = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Single-channel intensities in [0, 1].
template <typename Scalar>
using GrayImageT = Raster<Scalar>;
using GrayImage = GrayImageT<double>;

/// true = foreground (spot).
using BinaryMask = Raster<bool>;

/// 8-bit single channel, the on-disk form of gray rasters and masks.
using Gray8 = Raster<std::uint8_t>;

/// Interleaved 8-bit RGB, row-major triples.
struct RgbImage
{
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(checked_size(w, h), 0) {}

  std::uint8_t & at(int row, int col, int channel)
  {
    return data[3 * (static_cast<std::size_t>(row) * width + col) + channel];
  }
  std::uint8_t at(int row, int col, int channel) const
  {
    return data[3 * (static_cast<std::size_t>(row) * width + col) + channel];
  }

  bool operator==(const RgbImage &) const = default;

private:
  static std::size_t checked_size(int w, int h)
  {
    if (w < 1 || h < 1) {
      throw std::invalid_argument("RgbImage: dimensions must be >= 1");
    }
    return 3 * static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  }
};

/// Maps 8-bit values onto [0, 1] (v / 255).
template <typename Scalar = double, typename Derived>
GrayImageT<Scalar> normalize_gray(const Eigen::ArrayBase<Derived> & values)
{
  return values.template cast<Scalar>() / Scalar(255);
}

/// Rounds [0, 1] intensities back to 8 bits, clamping out-of-range values.
template <typename Derived>
Gray8 quantize_gray(const Eigen::ArrayBase<Derived> & gray)
{
  using Scalar = typename Derived::Scalar;
  return (gray.max(Scalar(0)).min(Scalar(1)) * Scalar(255) + Scalar(0.5))
    .floor()
    .template cast<std::uint8_t>();
}

/// Replicates a gray raster into all three channels.
inline RgbImage gray_to_rgb(const Gray8 & gray)
{
  RgbImage out(static_cast<int>(gray.cols()), static_cast<int>(gray.rows()));
  for (Eigen::Index r = 0; r < gray.rows(); ++r) {
    for (Eigen::Index c = 0; c < gray.cols(); ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        out.at(static_cast<int>(r), static_cast<int>(c), ch) = gray(r, c);
      }
    }
  }
  return out;
}

template <typename A, typename B>
void require_same_shape(const A & a, const B & b, const char * what)
{
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(
      std::string(what) + ": dimension mismatch (" + std::to_string(a.cols()) + "x" +
      std::to_string(a.rows()) + " vs " + std::to_string(b.cols()) + "x" +
      std::to_string(b.rows()) + ")");
  }
}

}  // namespace spotseg

#endif  // SPOTSEG_IMAGE_HPP_
