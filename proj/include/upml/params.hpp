#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace upml {

/// Material constants and absorber-layer geometry.
///
/// The inner box B1 = prod_j [-L_j/2, L_j/2] holds the sources and any
/// obstacle. A layer of uniform thickness d wraps it on all sides, so the
/// computational box is B2 = prod_j [-L_j/2 - d, L_j/2 + d]. The layer
/// medium is defined by the per-axis stretching alpha_j = 1 + sigma_j/s1
/// with a real abscissa s1 > 0; it is lossless and delays, rather than
/// damps, outgoing wavefronts.
struct PmlParams {
  double eps = 1.0;              ///< permittivity, > 0
  double mu = 1.0;               ///< permeability, > 0
  Eigen::Vector3d L{2.0, 2.0, 2.0};  ///< inner box edge lengths, > 0
  double d = 1.0;                ///< layer thickness, > 0
  double sigma0 = 4.0;           ///< absorption strength, >= 0
  int m = 1;                     ///< profile exponent, integer >= 1
  double s1 = 0.0;               ///< abscissa; 0 selects the default 1/T
  double T = 1.0;                ///< final time, > 0
  double aspect_limit = 10.0;    ///< warn when max(L)/d exceeds this

  double wave_speed() const { return 1.0 / std::sqrt(eps * mu); }

  /// Largest signal speed of the layered medium, (1 + sigma0/s1)/sqrt(eps mu).
  double wave_speed_max() const { return (1.0 + sigma0 / s1) * wave_speed(); }

  /// Half extents of B1 and B2.
  Eigen::Vector3d inner_half() const { return 0.5 * L; }
  Eigen::Vector3d outer_half() const {
    return inner_half() + Eigen::Vector3d::Constant(d);
  }

  /// Resolves the s1 default, throws ConfigError listing every violated
  /// rule, and returns non-fatal warnings (thin-layer and aspect cases).
  std::vector<std::string> validate();
};

}  // namespace upml
