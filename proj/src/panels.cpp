#include "upml/panels.hpp"

#include <cmath>

#include "upml/errors.hpp"

namespace upml {

std::vector<SurfacePanel> make_panels(const PmlParams& p, int per_edge) {
  if (per_edge < 1) throw ConfigError("panels per edge must be >= 1");
  std::vector<SurfacePanel> panels;
  panels.reserve(std::size_t(6) * per_edge * per_edge);
  const Eigen::Vector3d half = p.inner_half();
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    const double du = p.L[u] / per_edge;
    const double dv = p.L[v] / per_edge;
    for (int side = -1; side <= 1; side += 2) {
      for (int i = 0; i < per_edge; ++i) {
        for (int j = 0; j < per_edge; ++j) {
          SurfacePanel panel;
          panel.center[axis] = side * half[axis];
          panel.center[u] = -half[u] + (i + 0.5) * du;
          panel.center[v] = -half[v] + (j + 0.5) * dv;
          panel.normal = Eigen::Vector3d::Zero();
          panel.normal[axis] = double(side);
          panel.area = du * dv;
          panels.push_back(panel);
        }
      }
    }
  }
  return panels;
}

double distance_to_inner_surface(const PmlParams& p, const Eigen::Vector3d& x) {
  // Signed box distance, then fold: outside it is the usual closest-point
  // distance, inside it is the gap to the nearest face.
  const Eigen::Vector3d q = x.cwiseAbs() - p.inner_half();
  const double outside = q.cwiseMax(0.0).norm();
  const double inside = std::min(q.maxCoeff(), 0.0);
  return std::fabs(outside + inside);
}

}  // namespace upml
