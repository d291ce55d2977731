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

#ifndef SPOTSEG_PREPROCESS_HPP_
#define SPOTSEG_PREPROCESS_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "spotseg/image.hpp"

namespace spotseg
{

struct PreprocessParams
{
  double gamma = 1.0;
  /// Power-law gain.
  double c = 1.0;
  /// Side of the square median window; odd.
  int median_kernel = 5;

  void validate() const
  {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("power-law constant c must be > 0");
    if (median_kernel < 1 || median_kernel % 2 == 0) {
      throw std::invalid_argument("median kernel must be odd and >= 1");
    }
  }
};

/// Luminance weights applied to channels normalized to [0, 1].
struct LuminanceWeights
{
  static constexpr double red = 0.2989;
  static constexpr double green = 0.5870;
  static constexpr double blue = 0.1140;
};

template <typename Scalar = double>
GrayImageT<Scalar> rgb_to_luminance(const RgbImage & img)
{
  GrayImageT<Scalar> out(img.height, img.width);
  const Scalar wr = LuminanceWeights::red / 255.0;
  const Scalar wg = LuminanceWeights::green / 255.0;
  const Scalar wb = LuminanceWeights::blue / 255.0;
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const Scalar y = wr * img.at(r, c, 0) + wg * img.at(r, c, 1) + wb * img.at(r, c, 2);
      out(r, c) = std::clamp(y, Scalar(0), Scalar(1));
    }
  }
  return out;
}

/// Square-window median with edge replication. Output has the input's shape.
template <typename Derived>
GrayImageT<typename Derived::Scalar> median_filter(
  const Eigen::ArrayBase<Derived> & img, int kernel)
{
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = img.rows();
  const Eigen::Index cols = img.cols();
  if (kernel < 1 || kernel % 2 == 0) {
    throw std::invalid_argument("median_filter: kernel must be odd, got " + std::to_string(kernel));
  }
  if (kernel > std::min(rows, cols)) {
    throw std::invalid_argument(
      "median_filter: kernel " + std::to_string(kernel) + " exceeds image size");
  }
  GrayImageT<Scalar> out(rows, cols);
  if (kernel == 1) {
    out = img;
    return out;
  }
  const int half = kernel / 2;
  const auto mid = static_cast<std::size_t>(kernel * kernel / 2);
  std::vector<Scalar> window(static_cast<std::size_t>(kernel * kernel));
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::size_t k = 0;
      for (int dr = -half; dr <= half; ++dr) {
        const Eigen::Index rr = std::clamp<Eigen::Index>(r + dr, 0, rows - 1);
        for (int dc = -half; dc <= half; ++dc) {
          const Eigen::Index cc = std::clamp<Eigen::Index>(c + dc, 0, cols - 1);
          window[k++] = img(rr, cc);
        }
      }
      std::nth_element(window.begin(), window.begin() + mid, window.end());
      out(r, c) = window[mid];
    }
  }
  return out;
}

/// Power law S = c * l^gamma, clamped to [0, 1].
template <typename Derived>
GrayImageT<typename Derived::Scalar> gamma_correct(
  const Eigen::ArrayBase<Derived> & img, double gamma, double c = 1.0)
{
  using Scalar = typename Derived::Scalar;
  if (!(gamma > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("gamma_correct: gamma and c must be > 0");
  }
  const Scalar gain(c);
  const Scalar exponent(gamma);
  return img.unaryExpr([gain, exponent](Scalar l) {
    return std::clamp(gain * std::pow(l, exponent), Scalar(0), Scalar(1));
  });
}

template <typename Derived>
GrayImageT<typename Derived::Scalar> gamma_correct(
  const Eigen::ArrayBase<Derived> & img, const PreprocessParams & params)
{
  params.validate();
  return gamma_correct(img, params.gamma, params.c);
}

}  // namespace spotseg

#endif  // SPOTSEG_PREPROCESS_HPP_
