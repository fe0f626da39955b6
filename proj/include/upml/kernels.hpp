#pragma once

#include <Eigen/Dense>
#include <complex>

#include "upml/params.hpp"

namespace upml {

using cplx = std::complex<double>;

/// Frequencies are restricted to the line Re(s) = s1 so that the kernel and
/// the coordinate stretch share one abscissa. Throws ConfigError otherwise.
void require_abscissa(const PmlParams& p, cplx s);

/// rho_s = s * |x_tilde - y| where x_tilde is the stretched image of x.
/// Throws NumericalError when |x_tilde - y| < 1e-12 * d (degenerate pair).
cplx complex_distance(const PmlParams& p, const Eigen::Vector3d& x,
                      const Eigen::Vector3d& y, cplx s);

/// Stretched fundamental solution
///   phi(x, y) = exp(-sqrt(eps mu) s r) / (4 pi r),  r = |x_tilde - y|.
/// Its modulus is bounded by exp(-sqrt(eps mu) Re rho_s) / (4 pi r).
cplx stretched_phi(const PmlParams& p, const Eigen::Vector3d& x,
                   const Eigen::Vector3d& y, cplx s);

/// Analytic gradient of stretched_phi in the y argument: -g'(r) e with
/// e = (x_tilde - y)/r and g the radial profile above.
Eigen::Vector3cd phi_gradient_y(const PmlParams& p, const Eigen::Vector3d& x,
                                const Eigen::Vector3d& y, cplx s);

/// Analytic y-Hessian of stretched_phi:
///   g''(r) e e^T + (g'(r)/r) (I - e e^T).
Eigen::Matrix3cd phi_hessian_y(const PmlParams& p, const Eigen::Vector3d& x,
                               const Eigen::Vector3d& y, cplx s);

/// Dyadic kernel phi I + (grad_y grad_y phi) / k^2 with k^2 = -eps mu s^2.
/// Symmetric by construction.
Eigen::Matrix3cd dyadic_green(const PmlParams& p, const Eigen::Vector3d& x,
                              const Eigen::Vector3d& y, cplx s);

}  // namespace upml
