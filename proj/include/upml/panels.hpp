#pragma once

#include <Eigen/Dense>
#include <vector>

#include "upml/params.hpp"

namespace upml {

/// One flat rectangular midpoint-quadrature panel on the inner-box surface.
struct SurfacePanel {
  Eigen::Vector3d center;  ///< panel midpoint, lies on the surface of B1
  Eigen::Vector3d normal;  ///< outward unit normal of the face
  double area = 0.0;
};

/// Covers all six faces of B1 with per_edge x per_edge uniform panels each.
/// Panel areas sum exactly to the surface area of B1.
std::vector<SurfacePanel> make_panels(const PmlParams& p, int per_edge);

/// Unsigned distance from a point to the surface of B1.
double distance_to_inner_surface(const PmlParams& p, const Eigen::Vector3d& x);

}  // namespace upml
