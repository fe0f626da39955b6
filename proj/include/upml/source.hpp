#pragma once

#include <Eigen/Dense>

#include "upml/params.hpp"

namespace upml {

/// Gaussian current dipole driving a single E edge (soft source).
struct SourceSpec {
  Eigen::Vector3d location{0.0, 0.0, 0.0};  ///< acts here via straddling edges
  int polarization = 2;                     ///< 0, 1, 2 for Ex, Ey, Ez
  double amplitude = 1.0;
  double t0 = 0.6;  ///< pulse center; must be >= 6 tau for a quiet start
  double tau = 0.1; ///< pulse width, > 0

  double waveform(double t) const {
    const double u = (t - t0) / tau;
    return amplitude * std::exp(-u * u);
  }

  /// Throws ConfigError unless the dipole sits strictly inside B1 and the
  /// pulse is numerically at rest at t = 0.
  void validate(const PmlParams& p) const;
};

/// Axis-aligned PEC cuboid obstacle, strictly inside B1.
struct ScattererSpec {
  Eigen::Vector3d lo{0, 0, 0};
  Eigen::Vector3d hi{0, 0, 0};

  /// Requires lo < hi, faces on grid planes, and >= 2 cells clearance to
  /// the inner interface.
  void validate(const PmlParams& p, double h) const;
};

}  // namespace upml
