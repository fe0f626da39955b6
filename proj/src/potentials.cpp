#include "upml/potentials.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"

namespace upml {

namespace {

void check_sizes(const std::vector<SurfacePanel>& panels,
                 const std::vector<Eigen::Vector3cd>& density) {
  if (panels.size() != density.size()) {
    std::ostringstream oss;
    oss << "density has " << density.size() << " entries for "
        << panels.size() << " panels";
    throw ConfigError(oss.str());
  }
}

void check_clearance(const PmlParams& p,
                     const std::vector<SurfacePanel>& panels,
                     const Eigen::Vector3d& x) {
  double max_edge = 0.0;
  for (const auto& panel : panels)
    max_edge = std::max(max_edge, std::sqrt(panel.area));
  const double dist = distance_to_inner_surface(p, x);
  if (dist < 2.0 * max_edge) {
    std::ostringstream oss;
    oss << "evaluation point is " << dist
        << " from the surface; midpoint quadrature needs at least two panel "
        << "widths (" << 2.0 * max_edge << ")";
    throw NumericalError(oss.str());
  }
}

}  // namespace

Eigen::Vector3cd single_layer(const PmlParams& p,
                              const std::vector<SurfacePanel>& panels,
                              const std::vector<Eigen::Vector3cd>& q,
                              const Eigen::Vector3d& x, cplx s) {
  check_sizes(panels, q);
  check_clearance(p, panels, x);
  Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
  for (std::size_t i = 0; i < panels.size(); ++i) {
    acc += panels[i].area *
           (dyadic_green(p, x, panels[i].center, s).transpose() * q[i]);
  }
  return acc;
}

Eigen::Vector3cd double_layer(const PmlParams& p,
                              const std::vector<SurfacePanel>& panels,
                              const std::vector<Eigen::Vector3cd>& pd,
                              const Eigen::Vector3d& x, cplx s) {
  check_sizes(panels, pd);
  check_clearance(p, panels, x);
  Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
  for (std::size_t i = 0; i < panels.size(); ++i) {
    acc += panels[i].area *
           phi_gradient_y(p, x, panels[i].center, s).cross(pd[i]);
  }
  return acc;
}

Eigen::Vector3cd pml_extension(const PmlParams& p,
                               const std::vector<SurfacePanel>& panels,
                               const std::vector<Eigen::Vector3cd>& pd,
                               const std::vector<Eigen::Vector3cd>& q,
                               const Eigen::Vector3d& x, cplx s) {
  return -single_layer(p, panels, q, x, s) - double_layer(p, panels, pd, x, s);
}

}  // namespace upml
