#pragma once

#include <Eigen/Dense>
#include <vector>

#include "upml/kernels.hpp"
#include "upml/panels.hpp"
#include "upml/params.hpp"

namespace upml {

/// Single-layer vector potential of a panelized density q:
///   sum over panels of G(x, y)^T q(y) * area.
/// Evaluation within two panel diameters of the surface is refused.
Eigen::Vector3cd single_layer(const PmlParams& p,
                              const std::vector<SurfacePanel>& panels,
                              const std::vector<Eigen::Vector3cd>& q,
                              const Eigen::Vector3d& x, cplx s);

/// Double-layer vector potential of a panelized density pd:
///   sum over panels of grad_y phi(x, y) x pd(y) * area.
Eigen::Vector3cd double_layer(const PmlParams& p,
                              const std::vector<SurfacePanel>& panels,
                              const std::vector<Eigen::Vector3cd>& pd,
                              const Eigen::Vector3d& x, cplx s);

/// Field representation radiated into the layer from surface data (pd, q):
///   -single_layer(q) - double_layer(pd).
Eigen::Vector3cd pml_extension(const PmlParams& p,
                               const std::vector<SurfacePanel>& panels,
                               const std::vector<Eigen::Vector3cd>& pd,
                               const std::vector<Eigen::Vector3cd>& q,
                               const Eigen::Vector3d& x, cplx s);

}  // namespace upml
