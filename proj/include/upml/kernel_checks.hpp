#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upml/params.hpp"
#include "upml/rng.hpp"

namespace upml {

/// One aggregated row of the kernel sweep CSV: for a sampled frequency
/// offset s2, the extreme margins over its batch of surface point pairs.
struct KernelSweepRow {
  double sigma0 = 0.0;
  double d = 0.0;
  int m = 1;
  double s2 = 0.0;
  double min_re_rho = 0.0;
  double min_abs_rho_over_s = 0.0;
  double max_phi_abs = 0.0;
  double bound_value = 0.0;
};

struct DecayCheckReport {
  std::size_t samples = 0;
  std::size_t violations = 0;       ///< margin failures beyond tolerance
  double min_re_rho = 0.0;          ///< over all samples
  double re_rho_bound = 0.0;        ///< sigma0 * d / (m + 1)
  double min_abs_rho_over_s = 0.0;  ///< over all samples
  double rho_over_s_bound = 0.0;    ///< d
  double max_phi_abs = 0.0;         ///< over all samples
  double phi_bound = 0.0;           ///< exp(-sqrt(eps mu) re_rho_bound)/(4 pi d)
  std::vector<KernelSweepRow> rows;
};

/// Samples (x, y, s2) with x uniform on the outer surface, y uniform on the
/// inner surface, s2 uniform in [-s2_span * s1, s2_span * s1], and checks
///   |rho_s / s| >= d,   Re rho_s >= sigma0 d/(m+1),   |phi| <= phi_bound.
/// A sample is a violation when it misses a bound by more than tol.
DecayCheckReport decay_bound_check(const PmlParams& p, std::size_t n_samples,
                                   std::uint64_t seed, double s2_span = 10.0,
                                   double tol = 1e-10);

/// Result of one named sampled-invariant suite entry.
struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  ///< worst relative error or margin observed
  double limit = 0.0;
};

/// Sampled invariants of the profile functions (symmetry, monotonicity,
/// derivative of the coordinate map, tensor bounds, integral identity).
std::vector<PropertyResult> profile_property_suite(const PmlParams& p,
                                                   std::uint64_t seed);

/// Sampled invariants of the kernels (Hessian and gradient against central
/// differences, Helmholtz residual, dyadic symmetry, curl-free Hessian part).
std::vector<PropertyResult> kernel_property_suite(const PmlParams& p,
                                                  std::uint64_t seed);

/// Uniform sample on the surface of a centered box with given half extents.
Eigen::Vector3d sample_box_surface(CounterRng& rng,
                                   const Eigen::Vector3d& half);

}  // namespace upml
