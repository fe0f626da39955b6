#pragma once

#include <Eigen/Dense>

#include "upml/params.hpp"

namespace upml {

/// Uniform staggered grid over the box prod_j [origin_j, origin_j + n_j h].
/// E components live on edges, H components on faces.
struct GridSpec {
  Eigen::Vector3i n{0, 0, 0};  ///< cell counts per axis, each >= 8
  double h = 0.0;              ///< uniform spacing
  Eigen::Vector3d origin{0, 0, 0};

  double node(int axis, int i) const { return origin[axis] + h * i; }
  double center(int axis, int i) const { return origin[axis] + h * (i + 0.5); }
};

/// Grid covering the computational box B2 of the given parameters. Requires
/// L_j/2 and d to be integer multiples of h so both material interfaces lie
/// on cell faces.
GridSpec make_grid(const PmlParams& p, double h);

/// Grid covering a centered box with the given half extents (reference and
/// test domains). Half extents must be integer multiples of h.
GridSpec make_box_grid(const Eigen::Vector3d& half, double h);

/// Stable explicit step: cfl * h / (c_max * sqrt(3)) with
/// c_max = (1 + sigma0/s1) / sqrt(eps mu). cfl must lie in (0, 1].
double cfl_timestep(const GridSpec& g, const PmlParams& p, double cfl = 0.9);

/// True when v is an integer multiple of h to within 1e-9 relative.
bool grid_aligned(double v, double h);

}  // namespace upml
