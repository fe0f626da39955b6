#include "doctest.h"

#include <cmath>

#include "upml/errors.hpp"
#include "upml/kernel_checks.hpp"
#include "upml/profiles.hpp"
#include "upml/rng.hpp"

using namespace upml;

namespace {

PmlParams base_params() {
  PmlParams p;
  p.L = Eigen::Vector3d(2.0, 2.0, 2.0);
  p.d = 1.0;
  p.sigma0 = 4.0;
  p.m = 1;
  p.s1 = 1.0;
  p.T = 1.0;
  return p;
}

// Composite Simpson over [a, b]; exact once the limits avoid the profile
// kinks, since each smooth piece is a polynomial of degree at most three.
double simpson_sigma(const PmlParams& p, double a, double b) {
  const int n = 4000;
  const double h = (b - a) / n;
  double acc = sigma(p, 0, a) + sigma(p, 0, b);
  for (int i = 1; i < n; ++i) {
    acc += sigma(p, 0, a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("absorption profile branches") {
  PmlParams p = base_params();
  CHECK(sigma(p, 0, 0.5) == 0.0);
  CHECK(sigma(p, 0, 1.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sigma(p, 0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(sigma(p, 0, 3.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(sigma(p, 0, -1.5) == sigma(p, 0, 1.5));
  CHECK(sigma(p, 1, 1.0) == 0.0);  // layer starts at the interface
}

TEST_CASE("stretching factor") {
  PmlParams p = base_params();
  CHECK(alpha(p, 0, 0.0) == 1.0);
  CHECK(alpha(p, 0, 1.5) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(alpha(p, 0, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  CounterRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(alpha(p, 0, rng.uniform(-4.0, 4.0)) >= 1.0);
  }
}

TEST_CASE("coordinate map values and structure") {
  PmlParams p = base_params();
  CHECK(stretched_coordinate(p, 0, 0.5) == 0.5);
  CHECK(stretched_coordinate(p, 0, 1.5) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(stretched_coordinate(p, 0, 2.0) == doctest::Approx(4.0).epsilon(1e-13));
  // affine with slope 1 + sigma0/s1 past the layer
  CHECK(stretched_coordinate(p, 0, 3.0) == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(stretched_coordinate(p, 0, -1.5) == -stretched_coordinate(p, 0, 1.5));

  double prev = stretched_coordinate(p, 0, -4.0);
  for (int i = 1; i <= 800; ++i) {
    const double x = -4.0 + 8.0 * i / 800.0;
    const double v = stretched_coordinate(p, 0, x);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("coordinate map derivative equals stretching factor") {
  PmlParams p = base_params();
  CounterRng rng(11);
  const double step = 1e-6 * p.d;
  int done = 0;
  double worst = 0.0;
  while (done < 2000) {
    const double x = rng.uniform(-4.0, 4.0);
    const double ax = std::fabs(x);
    if (std::fabs(ax - 1.0) < 1e-5 || std::fabs(ax - 2.0) < 1e-5) continue;
    const double fd = (stretched_coordinate(p, 0, x + step) -
                       stretched_coordinate(p, 0, x - step)) /
                      (2.0 * step);
    const double a = alpha(p, 0, x);
    worst = std::max(worst, std::fabs(fd - a) / a);
    ++done;
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("sigma integral identity") {
  PmlParams p = base_params();
  CHECK(sigma_integral(p, 0) == doctest::Approx(2.0).epsilon(1e-14));
  p.m = 2;
  CHECK(sigma_integral(p, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  p.m = 1;
  p.sigma0 = 0.0;
  CHECK(sigma_integral(p, 0) == 0.0);

  CounterRng rng(13);
  for (int i = 0; i < 20; ++i) {
    PmlParams q = base_params();
    q.sigma0 = rng.uniform(0.5, 10.0);
    q.d = rng.uniform(0.25, 2.0);
    q.m = 1 + int(rng.uniform_index(3));
    const double expected = q.sigma0 * q.d / (q.m + 1);
    const double got = sigma_integral(q, 0);
    CHECK(std::fabs(got - expected) <= 1e-13 * expected);
    const double quad = simpson_sigma(q, 0.5 * q.L[0], 0.5 * q.L[0] + q.d);
    CHECK(std::fabs(quad - got) <= 1e-8 * std::max(1.0, expected));
  }
}

TEST_CASE("diagonal tensors at hand-checked points") {
  PmlParams p = base_params();

  StretchDiagonal t = stretch_tensors(p, Eigen::Vector3d(1.75, 0.0, 0.0));
  CHECK(t.alpha[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(t.alpha[1] == 1.0);
  CHECK(t.ba[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(t.ba[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(t.ba[2] == doctest::Approx(0.25).epsilon(1e-14));

  t = stretch_tensors(p, Eigen::Vector3d::Zero());
  CHECK(t.ba[0] == 1.0);
  CHECK(t.ba[1] == 1.0);
  CHECK(t.ba[2] == 1.0);

  // edge point where both bounds are attained
  t = stretch_tensors(p, Eigen::Vector3d(2.0, 2.0, 0.0));
  CHECK(t.ba[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.ba[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.ba[2] == doctest::Approx(0.04).epsilon(1e-14));
}

TEST_CASE("tensor bounds and inverse consistency") {
  PmlParams p = base_params();
  const double top = 1.0 + p.sigma0 / p.s1;
  CounterRng rng(17);
  for (int i = 0; i < 2000; ++i) {
    Eigen::Vector3d x(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                      rng.uniform(-2.0, 2.0));
    const StretchDiagonal t = stretch_tensors(p, x);
    for (int j = 0; j < 3; ++j) {
      CHECK(t.ba[j] >= 1.0 / (top * top) - 1e-12);
      CHECK(t.ba[j] <= top + 1e-12);
      CHECK(t.ba_inv[j] >= 1.0 / top - 1e-12);
      CHECK(t.ba_inv[j] <= top * top + 1e-12);
      CHECK(t.ba[j] * t.ba_inv[j] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(t.ba[j] > 0.0);
    }
  }
}

TEST_CASE("profile property suite is green") {
  PmlParams p = base_params();
  for (const auto& r : profile_property_suite(p, 20260815)) {
    INFO(r.name);
    CHECK(r.pass);
  }
}

TEST_CASE("parameter validation") {
  PmlParams p = base_params();
  p.sigma0 = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_WITH_AS(p.validate(),
                       doctest::Contains("sigma0 must be non-negative"),
                       ConfigError);

  PmlParams q = base_params();
  q.s1 = 0.0;
  q.T = 2.0;
  CHECK(q.validate().empty());
  CHECK(q.s1 == 0.5);  // default abscissa is 1/T

  PmlParams thin = base_params();
  thin.d = 0.5;
  auto warnings = thin.validate();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("d < 1") != std::string::npos);

  PmlParams wide = base_params();
  wide.L = Eigen::Vector3d(12.0, 2.0, 2.0);
  warnings = wide.validate();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("aspect ratio") != std::string::npos);

  PmlParams bad = base_params();
  bad.m = 0;
  bad.d = -1.0;
  try {
    bad.validate();
    CHECK(false);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("thickness d") != std::string::npos);
    CHECK(msg.find("exponent m") != std::string::npos);
  }
}
