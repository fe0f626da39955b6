#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "upml/errors.hpp"
#include "upml/panels.hpp"
#include "upml/potentials.hpp"

using namespace upml;

namespace {

PmlParams layer_params(double sigma0, double s1) {
  PmlParams p;
  p.L = Eigen::Vector3d(2.0, 2.0, 2.0);
  p.d = 1.0;
  p.sigma0 = sigma0;
  p.m = 1;
  p.s1 = s1;
  p.T = 1.0;
  return p;
}

// Smooth synthetic densities without any symmetry the box could cancel.
std::vector<Eigen::Vector3cd> smooth_density(
    const std::vector<SurfacePanel>& panels, double phase) {
  std::vector<Eigen::Vector3cd> q(panels.size());
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const Eigen::Vector3d& c = panels[i].center;
    q[i] = Eigen::Vector3cd(
        cplx(1.0 + 0.3 * std::sin(1.3 * c[1] + phase), 0.0),
        cplx(0.7 * std::cos(0.9 * c[2]), 0.1 * std::sin(c[0])),
        cplx(0.5 + 0.2 * std::cos(1.1 * c[0] + phase), 0.0));
  }
  return q;
}

}  // namespace

TEST_CASE("panel covering of the inner surface") {
  PmlParams p = layer_params(4.0, 1.0);
  const auto panels = make_panels(p, 4);
  CHECK(panels.size() == 6 * 4 * 4);
  double area = 0.0;
  for (const auto& panel : panels) {
    area += panel.area;
    CHECK(distance_to_inner_surface(p, panel.center) <= 1e-12);
    CHECK(panel.normal.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // outward: stepping along the normal leaves the box
    CHECK(distance_to_inner_surface(p, panel.center + 0.1 * panel.normal) ==
          doctest::Approx(0.1).epsilon(1e-12));
  }
  CHECK(area == doctest::Approx(24.0).epsilon(1e-12));

  PmlParams slab = layer_params(4.0, 1.0);
  slab.L = Eigen::Vector3d(1.0, 2.0, 4.0);
  double slab_area = 0.0;
  for (const auto& panel : make_panels(slab, 5)) slab_area += panel.area;
  CHECK(slab_area == doctest::Approx(2 * (2.0 + 4.0 + 8.0)).epsilon(1e-12));
}

TEST_CASE("zero densities give zero potentials") {
  PmlParams p = layer_params(4.0, 1.0);
  const auto panels = make_panels(p, 6);
  std::vector<Eigen::Vector3cd> zero(panels.size(),
                                     Eigen::Vector3cd::Zero());
  const Eigen::Vector3d x(2.0, 0.0, 0.0);
  const cplx s(1.0, 0.5);
  CHECK(single_layer(p, panels, zero, x, s).norm() == 0.0);
  CHECK(double_layer(p, panels, zero, x, s).norm() == 0.0);
  CHECK(pml_extension(p, panels, zero, zero, x, s).norm() == 0.0);
}

TEST_CASE("extension is linear in the densities") {
  PmlParams p = layer_params(2.0, 1.0);
  const auto panels = make_panels(p, 6);
  auto pd = smooth_density(panels, 0.2);
  auto q = smooth_density(panels, 1.1);
  const Eigen::Vector3d x(1.8, 0.4, -0.3);
  const cplx s(1.0, 2.0);

  const Eigen::Vector3cd one = pml_extension(p, panels, pd, q, x, s);
  for (auto& v : pd) v *= 2.0;
  for (auto& v : q) v *= 2.0;
  const Eigen::Vector3cd two = pml_extension(p, panels, pd, q, x, s);
  CHECK((two - 2.0 * one).norm() <= 1e-12 * one.norm());
}

TEST_CASE("evaluation too close to the surface is refused") {
  PmlParams p = layer_params(4.0, 1.0);
  const auto panels = make_panels(p, 4);  // panel width 0.5
  const auto q = smooth_density(panels, 0.0);
  const Eigen::Vector3d near(1.2, 0.0, 0.0);  // 0.2 away, needs 1.0
  CHECK_THROWS_AS(single_layer(p, panels, q, near, cplx(1.0, 0.0)),
                  NumericalError);
  CHECK_THROWS_WITH_AS(
      double_layer(p, panels, q, near, cplx(1.0, 0.0)),
      doctest::Contains("two panel widths"), NumericalError);

  std::vector<Eigen::Vector3cd> short_q(panels.size() - 1,
                                        Eigen::Vector3cd::Zero());
  CHECK_THROWS_AS(
      single_layer(p, panels, short_q, Eigen::Vector3d(2, 0, 0), cplx(1, 0)),
      ConfigError);
}

TEST_CASE("panel refinement self-convergence") {
  PmlParams p = layer_params(2.0, 1.0);
  const Eigen::Vector3d x(2.0, 0.0, 0.0);
  const cplx s(1.0, 1.0);

  const auto coarse_panels = make_panels(p, 8);
  const auto fine_panels = make_panels(p, 16);
  const Eigen::Vector3cd coarse =
      pml_extension(p, coarse_panels, smooth_density(coarse_panels, 0.2),
                    smooth_density(coarse_panels, 1.1), x, s);
  const Eigen::Vector3cd fine =
      pml_extension(p, fine_panels, smooth_density(fine_panels, 0.2),
                    smooth_density(fine_panels, 1.1), x, s);
  CHECK((coarse - fine).norm() <= 0.01 * fine.norm());
}

TEST_CASE("extension magnitude decays with the absorption-thickness product") {
  const double s1 = 1.0;
  const Eigen::Vector3d x(2.0, 0.0, 0.0);
  const cplx s(s1, 0.0);

  double mag[3];
  const double sig[3] = {2.0, 4.0, 8.0};
  for (int i = 0; i < 3; ++i) {
    PmlParams p = layer_params(sig[i], s1);
    const auto panels = make_panels(p, 10);
    mag[i] = pml_extension(p, panels, smooth_density(panels, 0.2),
                           smooth_density(panels, 1.1), x, s)
                 .norm();
  }
  // sigma0 d/(m+1) steps by 1 then by 2; allow [2x, 0.8x] of each exponent
  CHECK(mag[1] / mag[0] >= std::exp(-2.0));
  CHECK(mag[1] / mag[0] <= std::exp(-0.8));
  CHECK(mag[2] / mag[1] >= std::exp(-4.0));
  CHECK(mag[2] / mag[1] <= std::exp(-1.6));
}

TEST_CASE("fitted bound constant is stable across absorption strengths") {
  // sup of |extension| over outer-boundary samples, divided by the bound
  // shape sqrt(d) (1 + sigma0/s1)^2 exp(-sqrt(eps mu) sigma0 d/(m+1)).
  const double s1 = 12.0;
  const cplx s(s1, 0.0);
  const std::vector<Eigen::Vector3d> points = {
      {2.0, 0.0, 0.0},   {0.0, 2.0, 0.0},   {0.0, 0.0, 2.0},
      {2.0, 0.7, -0.4},  {-2.0, 0.3, 0.6},  {0.5, -2.0, 0.8},
      {1.1, 2.0, -0.9},  {-0.8, 0.2, -2.0}, {2.0, -1.2, 1.3}};

  const double sig[3] = {2.0, 4.0, 8.0};
  double c_fit[3];
  for (int i = 0; i < 3; ++i) {
    PmlParams p = layer_params(sig[i], s1);
    const auto panels = make_panels(p, 10);
    const auto pd = smooth_density(panels, 0.2);
    const auto q = smooth_density(panels, 1.1);
    double sup = 0.0;
    for (const auto& x : points) {
      sup = std::max(sup, pml_extension(p, panels, pd, q, x, s).norm());
    }
    const double shape = std::sqrt(p.d) * std::pow(1.0 + sig[i] / s1, 2) *
                         std::exp(-sig[i] * p.d / (p.m + 1));
    c_fit[i] = sup / shape;
  }
  const double mean = (c_fit[0] + c_fit[1] + c_fit[2]) / 3.0;
  for (int i = 0; i < 3; ++i) {
    CHECK(c_fit[i] >= 0.5 * mean);
    CHECK(c_fit[i] <= 1.5 * mean);
  }
}
