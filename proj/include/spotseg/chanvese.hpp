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

// Two-phase piecewise-constant (Chan-Vese) level-set segmentation.
//
// The level set phi is positive inside the contour. Each explicit Euler step is
//
//   phi += dt * delta_eps(phi) * (mu * kappa - nu - lambda1 (I - c1)^2 + lambda2 (I - c2)^2)
//
// where c1 / c2 are the smoothed-Heaviside weighted means inside / outside and
// kappa = div(grad phi / |grad phi|) by central differences with replicated
// borders. Nothing is reinitialized between steps.

#ifndef SPOTSEG_CHANVESE_HPP_
#define SPOTSEG_CHANVESE_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "spotseg/image.hpp"

namespace spotseg
{

template <typename Scalar>
using LevelSetT = Raster<Scalar>;
using LevelSet = LevelSetT<double>;

/// Raised when phi stops being finite; reduce dt.
class NumericalFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class InitScheme { checkerboard, centered_circle };

struct ChanVeseParams
{
  double mu = 0.2;
  double nu = 0.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double dt = 0.5;
  double epsilon = 1.0;
  int iterations = 500;

  void validate() const
  {
    if (!(mu >= 0.0)) throw std::invalid_argument("chan-vese: mu must be >= 0");
    if (!std::isfinite(nu)) throw std::invalid_argument("chan-vese: nu must be finite");
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
      throw std::invalid_argument("chan-vese: lambda1 and lambda2 must be > 0");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("chan-vese: dt must be > 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("chan-vese: epsilon must be > 0");
    if (iterations < 1) throw std::invalid_argument("chan-vese: iterations must be >= 1");
  }
};

/// Checkerboard period in pixels.
inline constexpr double kCheckerboardPeriod = 10.0;
/// Floor on |grad phi| in the curvature term.
inline constexpr double kGradientFloor = 1e-8;

template <typename Scalar>
Scalar heaviside(Scalar z, Scalar eps)
{
  return Scalar(0.5) * (Scalar(1) + Scalar(2) / std::numbers::pi_v<Scalar> * std::atan(z / eps));
}

template <typename Scalar>
Scalar dirac(Scalar z, Scalar eps)
{
  return eps / (std::numbers::pi_v<Scalar> * (eps * eps + z * z));
}

/// checkerboard: sin(pi x / P) sin(pi y / P); centered_circle: signed distance
/// to a circle of radius min(w, h) / 3 centred at (w / 2, h / 2), positive inside.
template <typename Scalar = double>
LevelSetT<Scalar> initialize_levelset(int width, int height, InitScheme scheme)
{
  if (width < 1 || height < 1) {
    throw std::invalid_argument("initialize_levelset: dimensions must be >= 1");
  }
  LevelSetT<Scalar> phi(height, width);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar period(kCheckerboardPeriod);
  const Scalar cx = Scalar(width) / 2;
  const Scalar cy = Scalar(height) / 2;
  const Scalar radius = Scalar(std::min(width, height)) / 3;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (scheme == InitScheme::checkerboard) {
        phi(y, x) = std::sin(pi * x / period) * std::sin(pi * y / period);
      } else {
        phi(y, x) = radius - std::hypot(Scalar(x) - cx, Scalar(y) - cy);
      }
    }
  }
  return phi;
}

struct RegionMeans
{
  double inside = 0.0;   // c1
  double outside = 0.0;  // c2
};

/// Smoothed-Heaviside weighted means; an empty region falls back to the global mean.
template <typename DerivedI, typename DerivedP>
RegionMeans region_means(
  const Eigen::ArrayBase<DerivedI> & img, const Eigen::ArrayBase<DerivedP> & phi, double epsilon)
{
  require_same_shape(img, phi, "region_means");
  using Scalar = typename DerivedI::Scalar;
  const Scalar eps(epsilon);
  Scalar sum_in(0), w_in(0), sum_out(0), w_out(0), total(0);
  for (Eigen::Index r = 0; r < img.rows(); ++r) {
    for (Eigen::Index c = 0; c < img.cols(); ++c) {
      const Scalar h = heaviside<Scalar>(phi(r, c), eps);
      const Scalar v = img(r, c);
      sum_in += v * h;
      w_in += h;
      sum_out += v * (Scalar(1) - h);
      w_out += Scalar(1) - h;
      total += v;
    }
  }
  const Scalar global = total / Scalar(img.size());
  RegionMeans m;
  m.inside = w_in > Scalar(0) ? static_cast<double>(sum_in / w_in) : static_cast<double>(global);
  m.outside = w_out > Scalar(0) ? static_cast<double>(sum_out / w_out) : static_cast<double>(global);
  return m;
}

/// div(grad phi / |grad phi|), central differences, replicated borders.
template <typename Derived>
Raster<typename Derived::Scalar> curvature(const Eigen::ArrayBase<Derived> & phi)
{
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = phi.rows();
  const Eigen::Index cols = phi.cols();
  const Scalar floor(kGradientFloor);
  Raster<Scalar> nx(rows, cols), ny(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index up = std::max<Eigen::Index>(r - 1, 0);
    const Eigen::Index down = std::min<Eigen::Index>(r + 1, rows - 1);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index left = std::max<Eigen::Index>(c - 1, 0);
      const Eigen::Index right = std::min<Eigen::Index>(c + 1, cols - 1);
      const Scalar gx = (phi(r, right) - phi(r, left)) / Scalar(2);
      const Scalar gy = (phi(down, c) - phi(up, c)) / Scalar(2);
      const Scalar norm = std::max(std::sqrt(gx * gx + gy * gy), floor);
      nx(r, c) = gx / norm;
      ny(r, c) = gy / norm;
    }
  }
  Raster<Scalar> kappa(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index up = std::max<Eigen::Index>(r - 1, 0);
    const Eigen::Index down = std::min<Eigen::Index>(r + 1, rows - 1);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index left = std::max<Eigen::Index>(c - 1, 0);
      const Eigen::Index right = std::min<Eigen::Index>(c + 1, cols - 1);
      kappa(r, c) = (nx(r, right) - nx(r, left)) / Scalar(2) + (ny(down, c) - ny(up, c)) / Scalar(2);
    }
  }
  return kappa;
}

/// Discrete energy mu * sum|grad H(phi)| + nu * sum H(phi)
///   + lambda1 * sum H (I - c1)^2 + lambda2 * sum (1 - H) (I - c2)^2.
template <typename DerivedI, typename DerivedP>
double chan_vese_energy(
  const Eigen::ArrayBase<DerivedI> & img, const Eigen::ArrayBase<DerivedP> & phi,
  const ChanVeseParams & params)
{
  require_same_shape(img, phi, "chan_vese_energy");
  using Scalar = typename DerivedI::Scalar;
  const Scalar eps(params.epsilon);
  const RegionMeans m = region_means(img, phi, params.epsilon);
  const Raster<Scalar> h =
    phi.derived().unaryExpr([eps](Scalar z) { return heaviside<Scalar>(z, eps); });
  const Eigen::Index rows = h.rows();
  const Eigen::Index cols = h.cols();
  double length = 0.0, fit = 0.0, area = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index up = std::max<Eigen::Index>(r - 1, 0);
    const Eigen::Index down = std::min<Eigen::Index>(r + 1, rows - 1);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index left = std::max<Eigen::Index>(c - 1, 0);
      const Eigen::Index right = std::min<Eigen::Index>(c + 1, cols - 1);
      const double gx = (h(r, right) - h(r, left)) / 2.0;
      const double gy = (h(down, c) - h(up, c)) / 2.0;
      length += std::sqrt(gx * gx + gy * gy);
      const double v = img(r, c);
      const double hv = h(r, c);
      fit += params.lambda1 * hv * (v - m.inside) * (v - m.inside) +
             params.lambda2 * (1.0 - hv) * (v - m.outside) * (v - m.outside);
      area += hv;
    }
  }
  return params.mu * length + params.nu * area + fit;
}

/// One explicit Euler update of phi in place (Jacobi: all pixels read the old phi).
template <typename DerivedI, typename Scalar>
void evolve_step(
  const Eigen::ArrayBase<DerivedI> & img, LevelSetT<Scalar> & phi, const ChanVeseParams & params)
{
  const RegionMeans m = region_means(img, phi, params.epsilon);
  const Raster<Scalar> kappa = curvature(phi);
  const Scalar eps(params.epsilon);
  const Scalar c1(m.inside), c2(m.outside);
  const Scalar mu(params.mu), nu(params.nu), l1(params.lambda1), l2(params.lambda2), dt(params.dt);
  for (Eigen::Index r = 0; r < phi.rows(); ++r) {
    for (Eigen::Index c = 0; c < phi.cols(); ++c) {
      const Scalar v = img(r, c);
      const Scalar force = mu * kappa(r, c) - nu - l1 * (v - c1) * (v - c1) + l2 * (v - c2) * (v - c2);
      phi(r, c) += dt * dirac<Scalar>(phi(r, c), eps) * force;
    }
  }
}

/// Called after every step with the 1-based iteration count.
template <typename Scalar>
using EvolveObserver = std::function<void(int iteration, const LevelSetT<Scalar> & phi)>;

/// Runs params.iterations steps on phi, in place.
template <typename DerivedI, typename Scalar>
void evolve_levelset(
  const Eigen::ArrayBase<DerivedI> & img, const ChanVeseParams & params, LevelSetT<Scalar> & phi,
  const EvolveObserver<Scalar> & observer = {})
{
  params.validate();
  require_same_shape(img, phi, "evolve");
  if (!phi.allFinite()) {
    throw NumericalFailure("evolve: initial level set is not finite");
  }
  for (int it = 1; it <= params.iterations; ++it) {
    evolve_step(img, phi, params);
    if (!phi.allFinite()) {
      throw NumericalFailure(
        "evolve: level set became non-finite at iteration " + std::to_string(it) +
        "; reduce dt");
    }
    if (observer) {
      observer(it, phi);
    }
  }
}

/// Converts a level set into the spot mask: the region {phi > 0} is kept if its
/// mean intensity is below the complement's, otherwise the complement is
/// returned. With no contrast between the two regions the mask is empty.
template <typename DerivedI, typename DerivedP>
BinaryMask darker_region_mask(
  const Eigen::ArrayBase<DerivedI> & img, const Eigen::ArrayBase<DerivedP> & phi)
{
  require_same_shape(img, phi, "darker_region_mask");
  const BinaryMask inside = phi > typename DerivedP::Scalar(0);
  double sum_in = 0.0, sum_out = 0.0, total = 0.0;
  Eigen::Index n_in = 0;
  for (Eigen::Index i = 0; i < inside.size(); ++i) {
    const double v = img.derived().coeff(i);
    total += v;
    if (inside.coeff(i)) {
      sum_in += v;
      ++n_in;
    } else {
      sum_out += v;
    }
  }
  const Eigen::Index n_out = inside.size() - n_in;
  const double global = total / static_cast<double>(inside.size());
  const double mean_in = n_in > 0 ? sum_in / static_cast<double>(n_in) : global;
  const double mean_out = n_out > 0 ? sum_out / static_cast<double>(n_out) : global;
  constexpr double kContrastTolerance = 1e-9;
  if (mean_in < mean_out - kContrastTolerance) {
    return inside;
  }
  if (mean_out < mean_in - kContrastTolerance) {
    return !inside;
  }
  return BinaryMask::Zero(inside.rows(), inside.cols());
}

template <typename DerivedI, typename Scalar>
BinaryMask evolve(
  const Eigen::ArrayBase<DerivedI> & img, const ChanVeseParams & params, LevelSetT<Scalar> init)
{
  evolve_levelset(img, params, init);
  return darker_region_mask(img, init);
}

/// Masks after each of the given iteration counts (strictly increasing), from a
/// single run of max(checkpoints) steps. Identical to separate evolve() calls.
template <typename DerivedI, typename Scalar>
std::vector<BinaryMask> evolve_checkpoints(
  const Eigen::ArrayBase<DerivedI> & img, ChanVeseParams params, LevelSetT<Scalar> init,
  const std::vector<int> & checkpoints)
{
  if (checkpoints.empty() || !std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end()) {
    throw std::invalid_argument("evolve_checkpoints: checkpoints must be strictly increasing");
  }
  params.iterations = checkpoints.back();
  std::vector<BinaryMask> masks;
  masks.reserve(checkpoints.size());
  std::size_t next = 0;
  evolve_levelset<DerivedI, Scalar>(
    img, params, init, [&](int it, const LevelSetT<Scalar> & phi) {
      if (next < checkpoints.size() && it == checkpoints[next]) {
        masks.push_back(darker_region_mask(img, phi));
        ++next;
      }
    });
  return masks;
}

/// Default solver parameters used by the segmentation pipeline.
inline ChanVeseParams default_chan_vese_params(int iterations)
{
  ChanVeseParams p;
  p.iterations = iterations;
  return p;
}

/// Checkerboard initialization plus default parameters.
template <typename Derived>
BinaryMask segment_gray(const Eigen::ArrayBase<Derived> & img, int iterations)
{
  using Scalar = typename Derived::Scalar;
  const auto init = initialize_levelset<Scalar>(
    static_cast<int>(img.cols()), static_cast<int>(img.rows()), InitScheme::checkerboard);
  return evolve(img, default_chan_vese_params(iterations), init);
}

}  // namespace spotseg

#endif  // SPOTSEG_CHANVESE_HPP_
