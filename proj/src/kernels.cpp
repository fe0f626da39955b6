#include "upml/kernels.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"
#include "upml/profiles.hpp"

namespace upml {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

struct Separation {
  Eigen::Vector3d diff;  // x_tilde - y
  double r;              // |x_tilde - y|
};

Separation separation(const PmlParams& p, const Eigen::Vector3d& x,
                      const Eigen::Vector3d& y) {
  Separation s;
  s.diff = stretched_point(p, x) - y;
  s.r = s.diff.norm();
  if (s.r < 1e-12 * p.d) {
    std::ostringstream oss;
    oss << "degenerate kernel evaluation: |x_tilde - y| = " << s.r
        << " below 1e-12 * d";
    throw NumericalError(oss.str());
  }
  return s;
}

// Radial profile g(r) = exp(-kappa s r) / (4 pi r) and its derivatives.
struct Radial {
  cplx g, g1, g2;  // value, first, second derivative in r
};

Radial radial(const PmlParams& p, double r, cplx s) {
  const double kappa = std::sqrt(p.eps * p.mu);
  const cplx ks = kappa * s;
  Radial out;
  out.g = std::exp(-ks * r) / (kFourPi * r);
  out.g1 = -(ks + 1.0 / r) * out.g;
  out.g2 = (ks * ks + 2.0 * ks / r + 2.0 / (r * r)) * out.g;
  return out;
}

}  // namespace

void require_abscissa(const PmlParams& p, cplx s) {
  const double tol = 1e-12 * std::max(1.0, std::fabs(p.s1));
  if (std::fabs(s.real() - p.s1) > tol) {
    std::ostringstream oss;
    oss << "frequency Re(s) = " << s.real()
        << " does not match the stretching abscissa s1 = " << p.s1;
    throw ConfigError(oss.str());
  }
}

cplx complex_distance(const PmlParams& p, const Eigen::Vector3d& x,
                      const Eigen::Vector3d& y, cplx s) {
  require_abscissa(p, s);
  return s * separation(p, x, y).r;
}

cplx stretched_phi(const PmlParams& p, const Eigen::Vector3d& x,
                   const Eigen::Vector3d& y, cplx s) {
  require_abscissa(p, s);
  return radial(p, separation(p, x, y).r, s).g;
}

Eigen::Vector3cd phi_gradient_y(const PmlParams& p, const Eigen::Vector3d& x,
                                const Eigen::Vector3d& y, cplx s) {
  require_abscissa(p, s);
  const Separation sep = separation(p, x, y);
  const Radial rad = radial(p, sep.r, s);
  const Eigen::Vector3d e = sep.diff / sep.r;
  // d/dy r = -e, so grad_y g(r) = -g'(r) e.
  return (-rad.g1) * e.cast<cplx>();
}

Eigen::Matrix3cd phi_hessian_y(const PmlParams& p, const Eigen::Vector3d& x,
                               const Eigen::Vector3d& y, cplx s) {
  require_abscissa(p, s);
  const Separation sep = separation(p, x, y);
  const Radial rad = radial(p, sep.r, s);
  const Eigen::Matrix3d ee =
      (sep.diff / sep.r) * (sep.diff / sep.r).transpose();
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  return rad.g2 * ee.cast<cplx>() +
         (rad.g1 / sep.r) * (id - ee).cast<cplx>();
}

Eigen::Matrix3cd dyadic_green(const PmlParams& p, const Eigen::Vector3d& x,
                              const Eigen::Vector3d& y, cplx s) {
  require_abscissa(p, s);
  const cplx k2 = -p.eps * p.mu * s * s;
  Eigen::Matrix3cd g = phi_hessian_y(p, x, y, s) / k2;
  const cplx phi = stretched_phi(p, x, y, s);
  g(0, 0) += phi;
  g(1, 1) += phi;
  g(2, 2) += phi;
  return g;
}

}  // namespace upml
