#include "upml/profiles.hpp"

#include <cmath>

namespace upml {

namespace {

// x^n for small integer n without libm dispatch.
double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

double sigma(const PmlParams& p, int axis, double x) {
  const double half = 0.5 * p.L[axis];
  const double ax = std::fabs(x);
  if (ax <= half) return 0.0;
  if (ax >= half + p.d) return p.sigma0;
  return p.sigma0 * pow_int((ax - half) / p.d, p.m);
}

double alpha(const PmlParams& p, int axis, double x) {
  return 1.0 + sigma(p, axis, x) / p.s1;
}

double stretched_coordinate(const PmlParams& p, int axis, double x) {
  const double half = 0.5 * p.L[axis];
  const double ax = std::fabs(x);
  const double sgn = (x < 0.0) ? -1.0 : 1.0;
  if (ax <= half) return x;
  // Accumulated stretch through the graded part of the layer.
  const double full = p.sigma0 * p.d / (p.s1 * (p.m + 1));
  if (ax <= half + p.d) {
    const double u = (ax - half) / p.d;
    return x + sgn * full * pow_int(u, p.m + 1);
  }
  return x + sgn * (full + (p.sigma0 / p.s1) * (ax - half - p.d));
}

double sigma_integral(const PmlParams& p, int axis) {
  // integral_0^x sigma = s1 * (x_tilde(x) - x); evaluate at the outer edge.
  const double edge = 0.5 * p.L[axis] + p.d;
  return p.s1 * (stretched_coordinate(p, axis, edge) - edge);
}

Eigen::Vector3d stretched_point(const PmlParams& p, const Eigen::Vector3d& x) {
  return {stretched_coordinate(p, 0, x[0]), stretched_coordinate(p, 1, x[1]),
          stretched_coordinate(p, 2, x[2])};
}

StretchDiagonal stretch_tensors(const PmlParams& p, const Eigen::Vector3d& x) {
  StretchDiagonal t;
  for (int j = 0; j < 3; ++j) t.alpha[j] = alpha(p, j, x[j]);
  const double a1 = t.alpha[0], a2 = t.alpha[1], a3 = t.alpha[2];
  t.a = {1.0 / (a2 * a3), 1.0 / (a1 * a3), 1.0 / (a1 * a2)};
  t.b = t.alpha;
  t.ba = t.b.cwiseProduct(t.a);
  t.ba_inv = t.ba.cwiseInverse();
  return t;
}

}  // namespace upml
