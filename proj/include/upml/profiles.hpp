#pragma once

#include <Eigen/Dense>

#include "upml/params.hpp"

namespace upml {

/// Absorption profile along one axis (0, 1, 2). Even in x: zero across the
/// inner box, sigma0 * ((|x| - L/2)/d)^m through the layer, sigma0 outside.
double sigma(const PmlParams& p, int axis, double x);

/// Stretching factor alpha = 1 + sigma/s1. Equals 1 inside the inner box
/// and never drops below 1.
double alpha(const PmlParams& p, int axis, double x);

/// Coordinate map x_tilde(x) = integral_0^x alpha(t) dt, in closed form.
/// Odd, continuous, strictly increasing; identity over the inner box;
/// affine with slope 1 + sigma0/s1 beyond the layer.
double stretched_coordinate(const PmlParams& p, int axis, double x);

/// integral_0^{L/2 + d} sigma, evaluated through the coordinate map.
/// Equals sigma0 * d / (m + 1).
double sigma_integral(const PmlParams& p, int axis);

/// Componentwise coordinate stretch of a point.
Eigen::Vector3d stretched_point(const PmlParams& p, const Eigen::Vector3d& x);

/// Diagonal material tensors of the layered medium at a point.
struct StretchDiagonal {
  Eigen::Vector3d alpha;   ///< per-axis stretching factors, each >= 1
  Eigen::Vector3d a;       ///< diag A = {1/(a2 a3), 1/(a1 a3), 1/(a1 a2)}
  Eigen::Vector3d b;       ///< diag B = {a1, a2, a3}
  Eigen::Vector3d ba;      ///< diag of B A
  Eigen::Vector3d ba_inv;  ///< diag of (B A)^-1
};

/// Samples alpha on each axis at x and assembles the diagonal tensors.
/// Every entry of ba lies in [(1 + sigma0/s1)^-2, 1 + sigma0/s1] and every
/// entry of ba_inv in [(1 + sigma0/s1)^-1, (1 + sigma0/s1)^2].
StretchDiagonal stretch_tensors(const PmlParams& p, const Eigen::Vector3d& x);

}  // namespace upml
