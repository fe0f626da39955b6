#include "upml/kernel_checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "upml/kernels.hpp"
#include "upml/profiles.hpp"

namespace upml {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson_rec(f, a, b, fa, fm, fb,
                              simpson(f, a, b, fa, fm, fb), tol, 48);
}

struct SamplePair {
  Eigen::Vector3d x, y;
  cplx s;
  double r;  // |x_tilde - y|
};

// Draws surface pairs with the frequency kept inside the finite-difference
// stencils' accuracy regime: sqrt(eps mu) |s| r below 20, where the second
// difference truncation term sits a factor of three under the tolerance.
SamplePair admissible_sample(const PmlParams& p, CounterRng& rng,
                             double s_mag_limit) {
  const double kappa = std::sqrt(p.eps * p.mu);
  for (;;) {
    SamplePair sp;
    sp.x = sample_box_surface(rng, p.outer_half());
    sp.y = sample_box_surface(rng, p.inner_half());
    const double s2_max =
        std::sqrt(std::max(0.0, s_mag_limit * s_mag_limit - p.s1 * p.s1));
    sp.s = cplx(p.s1, rng.uniform(-s2_max, s2_max));
    sp.r = (stretched_point(p, sp.x) - sp.y).norm();
    if (sp.r < 1e-6 * p.d) continue;
    if (kappa * std::abs(sp.s) * sp.r > 20.0) continue;
    return sp;
  }
}

}  // namespace

Eigen::Vector3d sample_box_surface(CounterRng& rng,
                                   const Eigen::Vector3d& half) {
  // Face picked proportionally to area, point uniform within the face.
  double area2[3];  // combined area of the +/- face pair per axis
  double total = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int u = (a + 1) % 3, v = (a + 2) % 3;
    area2[a] = 2.0 * (2.0 * half[u]) * (2.0 * half[v]);
    total += area2[a];
  }
  const double pick = rng.uniform(0.0, total);
  int axis = 0;
  double acc = area2[0];
  while (axis < 2 && pick > acc) acc += area2[++axis];
  const int u = (axis + 1) % 3, v = (axis + 2) % 3;
  Eigen::Vector3d x;
  x[axis] = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * half[axis];
  x[u] = rng.uniform(-half[u], half[u]);
  x[v] = rng.uniform(-half[v], half[v]);
  return x;
}

DecayCheckReport decay_bound_check(const PmlParams& p, std::size_t n_samples,
                                   std::uint64_t seed, double s2_span,
                                   double tol) {
  DecayCheckReport rep;
  rep.re_rho_bound = p.sigma0 * p.d / (p.m + 1);
  rep.rho_over_s_bound = p.d;
  rep.phi_bound =
      std::exp(-std::sqrt(p.eps * p.mu) * rep.re_rho_bound) / (kFourPi * p.d);
  rep.min_re_rho = std::numeric_limits<double>::infinity();
  rep.min_abs_rho_over_s = std::numeric_limits<double>::infinity();
  rep.max_phi_abs = 0.0;
  if (n_samples == 0) {
    rep.min_re_rho = rep.min_abs_rho_over_s = 0.0;
    return rep;
  }

  CounterRng rng(seed, 0x6b65726e);
  const std::size_t n_rows = std::min<std::size_t>(100, n_samples);
  const std::size_t per_row = (n_samples + n_rows - 1) / n_rows;
  std::size_t drawn = 0;
  for (std::size_t row_i = 0; row_i < n_rows && drawn < n_samples; ++row_i) {
    KernelSweepRow row;
    row.sigma0 = p.sigma0;
    row.d = p.d;
    row.m = p.m;
    row.s2 = rng.uniform(-s2_span * p.s1, s2_span * p.s1);
    row.bound_value = rep.phi_bound;
    row.min_re_rho = std::numeric_limits<double>::infinity();
    row.min_abs_rho_over_s = std::numeric_limits<double>::infinity();
    row.max_phi_abs = 0.0;
    const cplx s(p.s1, row.s2);
    for (std::size_t k = 0; k < per_row && drawn < n_samples; ++k, ++drawn) {
      const Eigen::Vector3d x = sample_box_surface(rng, p.outer_half());
      const Eigen::Vector3d y = sample_box_surface(rng, p.inner_half());
      const cplx rho = complex_distance(p, x, y, s);
      const double r = std::abs(rho / s);
      const double re_rho = rho.real();
      const double phi_abs = std::abs(stretched_phi(p, x, y, s));
      row.min_re_rho = std::min(row.min_re_rho, re_rho);
      row.min_abs_rho_over_s = std::min(row.min_abs_rho_over_s, r);
      row.max_phi_abs = std::max(row.max_phi_abs, phi_abs);
      if (re_rho < rep.re_rho_bound - tol) ++rep.violations;
      if (r < rep.rho_over_s_bound - tol) ++rep.violations;
      if (phi_abs > rep.phi_bound + tol) ++rep.violations;
      ++rep.samples;
    }
    rep.min_re_rho = std::min(rep.min_re_rho, row.min_re_rho);
    rep.min_abs_rho_over_s =
        std::min(rep.min_abs_rho_over_s, row.min_abs_rho_over_s);
    rep.max_phi_abs = std::max(rep.max_phi_abs, row.max_phi_abs);
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<PropertyResult> profile_property_suite(const PmlParams& p,
                                                   std::uint64_t seed) {
  std::vector<PropertyResult> out;
  CounterRng rng(seed, 0x70726f66);
  const double reach = (p.inner_half().maxCoeff() + 2.0 * p.d) * 1.25;

  {  // even sigma, exact zero inside, exact plateau outside, alpha >= 1
    PropertyResult r{"profile piecewise structure", true, 0.0, 0.0};
    for (int i = 0; i < 10000; ++i) {
      const int axis = int(rng.uniform_index(3));
      const double x = rng.uniform(-reach, reach);
      const double half = 0.5 * p.L[axis];
      const double sv = sigma(p, axis, x);
      if (sigma(p, axis, -x) != sv) r.pass = false;
      if (std::fabs(x) <= half && sv != 0.0) r.pass = false;
      if (std::fabs(x) >= half + p.d && sv != p.sigma0) r.pass = false;
      if (!(alpha(p, axis, x) >= 1.0)) r.pass = false;
    }
    out.push_back(r);
  }

  {  // coordinate map odd and strictly increasing
    PropertyResult r{"stretch map odd, increasing", true, 0.0, 0.0};
    double prev_x = -reach;
    double prev_v = stretched_coordinate(p, 0, prev_x);
    for (int i = 1; i <= 4000; ++i) {
      const double x = -reach + 2.0 * reach * i / 4000.0;
      const double v = stretched_coordinate(p, 0, x);
      if (stretched_coordinate(p, 0, -x) != -v) r.pass = false;
      if (!(v > prev_v)) r.pass = false;
      prev_x = x;
      prev_v = v;
    }
    (void)prev_x;
    out.push_back(r);
  }

  {  // d x_tilde / dx == alpha away from breakpoints
    PropertyResult r{"stretch derivative matches alpha", true, 0.0, 1e-6};
    const double step = 1e-6 * p.d;
    int done = 0;
    while (done < 10000) {
      const int axis = int(rng.uniform_index(3));
      const double x = rng.uniform(-reach, reach);
      const double half = 0.5 * p.L[axis];
      const double ax = std::fabs(x);
      if (std::fabs(ax - half) < 10.0 * step ||
          std::fabs(ax - half - p.d) < 10.0 * step) {
        continue;
      }
      const double fd = (stretched_coordinate(p, axis, x + step) -
                         stretched_coordinate(p, axis, x - step)) /
                        (2.0 * step);
      const double a = alpha(p, axis, x);
      r.worst = std::max(r.worst, std::fabs(fd - a) / a);
      ++done;
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  {  // closed-form integral identity and quadrature cross-check
    PropertyResult r{"sigma integral identity", true, 0.0, 1e-13};
    for (int axis = 0; axis < 3; ++axis) {
      const double closed = sigma_integral(p, axis);
      const double expected = p.sigma0 * p.d / (p.m + 1);
      const double scale = std::max(1e-300, std::fabs(expected));
      r.worst = std::max(r.worst, std::fabs(closed - expected) / scale);
      const double quad = adaptive_simpson(
          [&](double t) { return sigma(p, axis, t); }, 0.0,
          0.5 * p.L[axis] + p.d, 1e-13 * std::max(1.0, scale));
      if (std::fabs(quad - closed) / std::max(1.0, scale) > 1e-10) {
        r.pass = false;
      }
    }
    r.pass = r.pass && r.worst <= r.limit;
    out.push_back(r);
  }

  {  // coordinate map equals the quadrature of alpha
    PropertyResult r{"stretch map matches quadrature", true, 0.0, 1e-10};
    for (int i = 0; i < 20; ++i) {
      const int axis = int(rng.uniform_index(3));
      const double x = rng.uniform(-reach, reach);
      const double closed = stretched_coordinate(p, axis, x);
      const double quad = adaptive_simpson(
          [&](double t) { return alpha(p, axis, t); }, 0.0, x, 1e-13);
      r.worst = std::max(
          r.worst, std::fabs(quad - closed) / std::max(1.0, std::fabs(closed)));
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  {  // diagonal tensor bounds over the computational box
    PropertyResult r{"tensor bounds", true, 0.0, 1e-12};
    const double top = 1.0 + p.sigma0 / p.s1;
    const Eigen::Vector3d outer = p.outer_half();
    for (int i = 0; i < 10000; ++i) {
      Eigen::Vector3d x;
      for (int j = 0; j < 3; ++j) x[j] = rng.uniform(-outer[j], outer[j]);
      const StretchDiagonal t = stretch_tensors(p, x);
      for (int j = 0; j < 3; ++j) {
        const double margin_lo = 1.0 / (top * top) - t.ba[j];
        const double margin_hi = t.ba[j] - top;
        const double inv_lo = 1.0 / top - t.ba_inv[j];
        const double inv_hi = t.ba_inv[j] - top * top;
        const double viol = std::max({margin_lo, margin_hi, inv_lo, inv_hi});
        r.worst = std::max(r.worst, viol);
      }
      if (x.cwiseAbs().maxCoeff() < p.inner_half().minCoeff()) {
        if (t.ba != Eigen::Vector3d::Ones()) r.pass = false;
      }
    }
    r.pass = r.pass && r.worst <= r.limit;
    out.push_back(r);
  }

  return out;
}

std::vector<PropertyResult> kernel_property_suite(const PmlParams& p,
                                                  std::uint64_t seed) {
  std::vector<PropertyResult> out;
  CounterRng rng(seed, 0x6664666b);
  const double kappa = std::sqrt(p.eps * p.mu);
  const int n = 100;

  auto phi_at = [&](const SamplePair& sp, const Eigen::Vector3d& y) {
    return stretched_phi(p, sp.x, y, sp.s);
  };

  {  // analytic Hessian against second central differences
    PropertyResult r{"hessian matches differences", true, 0.0, 1e-6};
    for (int i = 0; i < n; ++i) {
      const SamplePair sp = admissible_sample(p, rng, 10.0);
      const double step = 1e-4 * sp.r;
      const Eigen::Matrix3cd hess = phi_hessian_y(p, sp.x, sp.y, sp.s);
      const double scale = hess.cwiseAbs().maxCoeff();
      for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
          Eigen::Vector3d ea = Eigen::Vector3d::Zero();
          Eigen::Vector3d eb = Eigen::Vector3d::Zero();
          ea[a] = step;
          eb[b] = step;
          cplx fd;
          if (a == b) {
            fd = (phi_at(sp, sp.y + ea) - 2.0 * phi_at(sp, sp.y) +
                  phi_at(sp, sp.y - ea)) /
                 (step * step);
          } else {
            fd = (phi_at(sp, sp.y + ea + eb) - phi_at(sp, sp.y + ea - eb) -
                  phi_at(sp, sp.y - ea + eb) + phi_at(sp, sp.y - ea - eb)) /
                 (4.0 * step * step);
          }
          r.worst = std::max(r.worst, std::abs(fd - hess(a, b)) / scale);
        }
      }
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  {  // analytic gradient against first central differences
    PropertyResult r{"gradient matches differences", true, 0.0, 1e-7};
    for (int i = 0; i < n; ++i) {
      const SamplePair sp = admissible_sample(p, rng, 10.0);
      const double osc = kappa * std::abs(sp.s) * sp.r;
      const double step = 1e-4 * sp.r * std::min(1.0, 5.0 / std::max(5.0, osc));
      const Eigen::Vector3cd grad = phi_gradient_y(p, sp.x, sp.y, sp.s);
      Eigen::Vector3cd fd;
      for (int a = 0; a < 3; ++a) {
        Eigen::Vector3d ea = Eigen::Vector3d::Zero();
        ea[a] = step;
        fd[a] = (phi_at(sp, sp.y + ea) - phi_at(sp, sp.y - ea)) / (2.0 * step);
      }
      r.worst = std::max(r.worst, (fd - grad).norm() / grad.norm());
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  {  // seven-point Laplacian reproduces eps mu s^2 phi
    PropertyResult r{"helmholtz residual", true, 0.0, 1e-4};
    for (int i = 0; i < n; ++i) {
      const SamplePair sp = admissible_sample(p, rng, 10.0);
      const double step = 1e-3 * sp.r;
      cplx lap = -6.0 * phi_at(sp, sp.y);
      for (int a = 0; a < 3; ++a) {
        Eigen::Vector3d ea = Eigen::Vector3d::Zero();
        ea[a] = step;
        lap += phi_at(sp, sp.y + ea) + phi_at(sp, sp.y - ea);
      }
      lap /= step * step;
      const cplx target = p.eps * p.mu * sp.s * sp.s * phi_at(sp, sp.y);
      r.worst = std::max(r.worst, std::abs(lap - target) / std::abs(target));
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  {  // exact matrix symmetry
    PropertyResult r{"dyadic symmetry", true, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const SamplePair sp = admissible_sample(p, rng, 10.0);
      const Eigen::Matrix3cd g = dyadic_green(p, sp.x, sp.y, sp.s);
      const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
      r.worst = std::max(r.worst, asym);
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  {  // columnwise curl of the Hessian part vanishes
    PropertyResult r{"hessian part curl free", true, 0.0, 1e-6};
    for (int i = 0; i < n; ++i) {
      const SamplePair sp = admissible_sample(p, rng, 10.0);
      const cplx k2 = -p.eps * p.mu * sp.s * sp.s;
      const double osc = kappa * std::abs(sp.s) * sp.r;
      const double step = 1e-4 * sp.r * std::min(1.0, 5.0 / std::max(5.0, osc));
      const double gnorm = dyadic_green(p, sp.x, sp.y, sp.s).norm();
      auto col = [&](const Eigen::Vector3d& y, int c) -> Eigen::Vector3cd {
        return phi_hessian_y(p, sp.x, y, sp.s).col(c) / k2;
      };
      for (int c = 0; c < 3; ++c) {
        Eigen::Matrix3cd jac;  // jac(i, j) = d col_i / d y_j
        for (int a = 0; a < 3; ++a) {
          Eigen::Vector3d ea = Eigen::Vector3d::Zero();
          ea[a] = step;
          jac.col(a) =
              (col(sp.y + ea, c) - col(sp.y - ea, c)) / (2.0 * step);
        }
        Eigen::Vector3cd curl(jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0),
                              jac(1, 0) - jac(0, 1));
        r.worst = std::max(r.worst, curl.norm() / gnorm);
      }
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  {  // unstretched real-frequency kernel stays real
    PropertyResult r{"unstretched kernel real", true, 0.0, 0.0};
    PmlParams p0 = p;
    p0.sigma0 = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector3d x = sample_box_surface(rng, p0.outer_half());
      const Eigen::Vector3d y = sample_box_surface(rng, p0.inner_half());
      const Eigen::Matrix3cd g = dyadic_green(p0, x, y, cplx(p0.s1, 0.0));
      r.worst = std::max(r.worst, g.imag().cwiseAbs().maxCoeff());
    }
    r.pass = r.worst <= r.limit;
    out.push_back(r);
  }

  return out;
}

}  // namespace upml
