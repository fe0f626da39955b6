// Acceptance harness: runs the full verification ladder at desk scale and
// prints one pass/fail line per criterion. Exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "upml/csv.hpp"
#include "upml/errors.hpp"
#include "upml/fit.hpp"
#include "upml/grid.hpp"
#include "upml/history.hpp"
#include "upml/kernel_checks.hpp"
#include "upml/norms.hpp"
#include "upml/profiles.hpp"
#include "upml/rng.hpp"
#include "upml/simulation.hpp"
#include "upml/sweep.hpp"

using namespace upml;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20260815;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  double seconds = 0.0;
};

struct Timer {
  Clock::time_point start = Clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail << "  [violated] " << what << "\n";
  } else {
    o.detail << "  [ok] " << what << "\n";
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

PmlParams lemma_params() {
  PmlParams p;
  p.L = Eigen::Vector3d(2.0, 2.0, 2.0);
  p.d = 1.0;
  p.sigma0 = 4.0;
  p.m = 1;
  p.s1 = 1.0;
  p.T = 1.0;
  return p;
}

SourceSpec short_pulse() {
  SourceSpec src;
  src.location = Eigen::Vector3d::Zero();
  src.polarization = 2;
  src.amplitude = 1.0;
  src.t0 = 0.6;
  src.tau = 0.1;
  return src;
}

// Convergence experiment: unit-speed medium, inner box of edge 2, spacing
// 1/16, layer 0.5 thick, horizon 6, pulse tau 0.5 centered at 3. The
// abscissa controls how much the layer delays the wall echo per unit of
// sigma0*d; the default 1/T would push every nonzero-strength error
// straight to the floor, so the experiment pins its own value. At 4.0 the
// strongest run still clears the horizon (direct floor stays valid) while
// the middle exponents land between the floor band and e^-2 of the bare
// echo.
constexpr double kSweepS1 = 4.0;

SweepConfig convergence_config() {
  SweepConfig cfg;
  cfg.params.eps = 1.0;
  cfg.params.mu = 1.0;
  cfg.params.L = Eigen::Vector3d(2.0, 2.0, 2.0);
  cfg.params.d = 0.5;
  cfg.params.m = 1;
  cfg.params.s1 = kSweepS1;
  cfg.params.T = 6.0;
  cfg.h = 1.0 / 16.0;
  cfg.cfl = 0.9;
  cfg.snapshots = 60;
  cfg.ref_margin = 1.0;  // enlargement = c T / 2 + 1
  // exponents sigma0 d sqrt(eps mu) / 2 = 0..5
  cfg.sigma0_values = {0.0, 4.0, 8.0, 12.0, 16.0, 20.0};
  cfg.source.location = Eigen::Vector3d::Zero();
  cfg.source.polarization = 2;
  cfg.source.amplitude = 1.0;
  cfg.source.t0 = 3.0;
  cfg.source.tau = 0.5;
  return cfg;
}

DecayCheckReport g_bound_report;
double g_bound_seconds = 0.0;

Outcome criterion_1_distance_bounds() {
  Outcome o;
  Timer timer;
  PmlParams p = lemma_params();
  g_bound_report = decay_bound_check(p, 10000, kSeed, 10.0, 1e-10);
  g_bound_seconds = timer.elapsed();
  const DecayCheckReport& rep = g_bound_report;

  note(o, rep.samples == 10000, "drew 10000 surface samples");
  note(o, rep.min_abs_rho_over_s >= 1.0 - 1e-10,
       "|rho/s| >= 1 (min " + fmt(rep.min_abs_rho_over_s) + ")");
  note(o, rep.min_re_rho >= 2.0 - 1e-10,
       "Re rho >= 2 (min " + fmt(rep.min_re_rho) + ")");
  note(o, rep.violations == 0,
       "zero violations (" + std::to_string(rep.violations) + ")");
  o.seconds = g_bound_seconds;
  note(o, o.seconds < 5.0, "runtime " + fmt(o.seconds) + " s < 5 s");
  return o;
}

Outcome criterion_2_kernel_bound() {
  Outcome o;
  const DecayCheckReport& rep = g_bound_report;
  const double bound = std::exp(-2.0) / (4.0 * M_PI);
  note(o, rep.samples == 10000, "same 10000 samples");
  note(o, std::fabs(rep.phi_bound - bound) < 1e-12,
       "bound value e^-2/(4 pi) = " + fmt(bound));
  note(o, rep.max_phi_abs <= bound + 1e-10,
       "max |phi| " + fmt(rep.max_phi_abs) + " within the bound");
  o.seconds = g_bound_seconds;
  note(o, o.seconds < 5.0, "runtime " + fmt(o.seconds) + " s < 5 s");
  return o;
}

Outcome criterion_3_kernel_oracles() {
  Outcome o;
  Timer timer;
  PmlParams p = lemma_params();
  const auto suite = kernel_property_suite(p, kSeed + 1);
  auto find = [&](const char* name) -> const PropertyResult* {
    for (const auto& r : suite)
      if (r.name == name) return &r;
    return nullptr;
  };
  const PropertyResult* helm = find("helmholtz residual");
  const PropertyResult* hess = find("hessian matches differences");
  const PropertyResult* sym = find("dyadic symmetry");
  note(o, helm && helm->pass && helm->worst <= 1e-4,
       "helmholtz residual " + fmt(helm ? helm->worst : -1.0) + " <= 1e-4");
  note(o, hess && hess->pass && hess->worst <= 1e-6,
       "hessian vs differences " + fmt(hess ? hess->worst : -1.0) +
           " <= 1e-6");
  note(o, sym && sym->pass && sym->worst == 0.0, "dyadic kernel symmetric");
  o.seconds = timer.elapsed();
  return o;
}

Outcome criterion_4_profile_identities() {
  Outcome o;
  Timer timer;
  CounterRng rng(kSeed + 2);

  double worst_integral = 0.0;
  for (int i = 0; i < 20; ++i) {
    PmlParams p = lemma_params();
    p.sigma0 = rng.uniform(0.5, 10.0);
    p.d = rng.uniform(0.25, 2.0);
    p.m = 1 + int(rng.uniform_index(3));
    const double expected = p.sigma0 * p.d / (p.m + 1);
    worst_integral = std::max(
        worst_integral, std::fabs(sigma_integral(p, 0) - expected) / expected);
  }
  note(o, worst_integral <= 1e-13,
       "profile integral identity, worst " + fmt(worst_integral) +
           " <= 1e-13");

  PmlParams p = lemma_params();
  const double step = 1e-6 * p.d;
  double worst_deriv = 0.0;
  int done = 0;
  while (done < 10000) {
    const double x = rng.uniform(-4.0, 4.0);
    const double ax = std::fabs(x);
    if (std::fabs(ax - 1.0) < 1e-5 || std::fabs(ax - 2.0) < 1e-5) continue;
    const double fd = (stretched_coordinate(p, 0, x + step) -
                       stretched_coordinate(p, 0, x - step)) /
                      (2.0 * step);
    const double a = alpha(p, 0, x);
    worst_deriv = std::max(worst_deriv, std::fabs(fd - a) / a);
    ++done;
  }
  note(o, worst_deriv <= 1e-6,
       "coordinate map derivative vs stretch factor, worst " +
           fmt(worst_deriv) + " <= 1e-6");
  o.seconds = timer.elapsed();
  return o;
}

Outcome criterion_5_identity_reduction() {
  Outcome o;
  Timer timer;
  PmlParams p = lemma_params();
  p.sigma0 = 0.0;
  const GridSpec g = make_grid(p, 0.1);  // 40 cells per axis
  note(o, g.n[0] == 40, "grid is 40^3");
  const double dt = cfl_timestep(g, p);
  Simulation layered =
      Simulation::build(g, p, short_pulse(), std::nullopt, dt, false);
  Simulation vacuum =
      Simulation::build(g, p, short_pulse(), std::nullopt, dt, true);
  for (int n = 0; n < 100; ++n) {
    layered.step();
    vacuum.step();
  }
  bool same = true;
  for (int c = 0; c < 6; ++c) {
    const Array3& a = layered.field(c);
    const Array3& b = vacuum.field(c);
    same = same && a.same_shape(b) &&
           std::memcmp(a.v.data(), b.v.data(), a.size() * sizeof(double)) == 0;
  }
  note(o, same, "zero-strength layer run is bitwise a vacuum run (100 steps)");
  o.seconds = timer.elapsed();
  return o;
}

Outcome criterion_6_stability() {
  Outcome o;
  Timer timer;
  const double sig[3] = {0.0, 4.0, 8.0};
  for (double s0 : sig) {
    PmlParams p;
    p.L = Eigen::Vector3d(2.0, 2.0, 2.0);
    p.d = 0.5;
    p.sigma0 = s0;
    p.m = 1;
    p.s1 = 1.0;
    p.T = 20.0;
    const GridSpec g = make_grid(p, 1.0 / 16.0);  // 48 cells per axis
    const double dt = cfl_timestep(g, p);
    Simulation sim =
        Simulation::build(g, p, short_pulse(), std::nullopt, dt);
    std::vector<double> steps, energies;
    bool finite = true;
    try {
      for (int n = 0; n < 5000; ++n) {
        sim.step();
        if (sim.time() > 1.2 && n % 5 == 0) {
          steps.push_back(double(n));
          energies.push_back(sim.energy());
        }
      }
    } catch (const NumericalError&) {
      finite = false;
    }
    note(o, finite,
         "sigma0 " + fmt(s0) + ": 5000 steps on 48^3 stayed finite");
    if (!finite) continue;
    const LinearFit f = linear_fit(steps, energies);
    double mean = 0.0;
    for (double e : energies) mean += e;
    mean /= double(energies.size());
    note(o, std::fabs(f.slope) < 1e-6 * mean,
         "sigma0 " + fmt(s0) + ": post-source energy slope " +
             fmt(f.slope / mean) + " of mean per step < 1e-6");
  }

  // boundedness ratio must not grow when sigma0 T quadruples
  PmlParams p;
  p.L = Eigen::Vector3d(2.0, 2.0, 2.0);
  p.d = 0.5;
  p.m = 1;
  p.s1 = 1.0;
  p.T = 1.5;
  p.sigma0 = 2.0;
  const StabilityReport base = stability_probe(p, 1.0 / 16.0, 0.9,
                                               short_pulse(), 15);
  p.sigma0 = 8.0;
  const StabilityReport wide = stability_probe(p, 1.0 / 16.0, 0.9,
                                               short_pulse(), 15);
  note(o, std::isfinite(base.ratio) && std::isfinite(wide.ratio),
       "probe ratios finite (" + fmt(base.ratio) + ", " + fmt(wide.ratio) +
           ")");
  note(o, wide.ratio <= base.ratio * (1.0 + 1e-9),
       "ratio non-increasing as sigma0 T grows 4x: " + fmt(base.ratio) +
           " -> " + fmt(wide.ratio));
  o.seconds = timer.elapsed();
  note(o, o.seconds < 180.0, "runtime " + fmt(o.seconds) + " s < 180 s");
  return o;
}

SweepResult g_sweep;
double g_sweep_seconds = 0.0;

// Strict decay down to the floor band, on the combined E+H error.
bool decays_to_floor(const std::vector<ErrorReport>& reports, bool linf,
                     double floor, Outcome& o, const char* label) {
  bool ok = true;
  int above = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const double err = linf ? (r.linf_hcurl_E + r.linf_hcurl_H)
                            : (r.l2_hcurl_E + r.l2_hcurl_H);
    const bool pre_floor = err > 3.0 * floor;
    if (pre_floor) ++above;
    if (i == 0 || !pre_floor) continue;
    const auto& q = reports[i - 1];
    const double prev = linf ? (q.linf_hcurl_E + q.linf_hcurl_H)
                             : (q.l2_hcurl_E + q.l2_hcurl_H);
    if (!(err < prev)) {
      ok = false;
      o.detail << "  [violated] " << label << ": error at exponent "
               << r.theory_exponent << " (" << fmt(err)
               << ") does not drop below " << fmt(prev) << "\n";
    }
  }
  if (ok) {
    o.detail << "  [ok] " << label << ": strictly decreasing, " << above
             << " points above 3x floor " << fmt(floor) << "\n";
  }
  return ok;
}

Outcome criterion_7_convergence() {
  Outcome o;
  Timer timer;
  SweepConfig cfg = convergence_config();
  cfg.validate();
  g_sweep = run_sweep(cfg);
  g_sweep_seconds = timer.elapsed();
  const auto& reports = g_sweep.reports;

  note(o, reports.size() == 6, "six exponent points");
  for (const auto& r : reports) {
    o.detail << "    x " << fmt(r.theory_exponent) << "  l2 "
             << fmt(r.l2_hcurl_E + r.l2_hcurl_H) << "  linf "
             << fmt(r.linf_hcurl_E + r.linf_hcurl_H) << "\n";
  }
  o.detail << "    floor l2 " << fmt(g_sweep.floor_l2) << "  floor linf "
           << fmt(g_sweep.floor_linf) << "\n";

  note(o, decays_to_floor(reports, false, g_sweep.floor_l2, o,
                          "time-integrated error"),
       "monotone decay until the floor band");

  bool fit_ok = false;
  try {
    const DecayFit fit = fit_decay(reports, NormKind::L2);
    fit_ok = fit.rate >= 0.5 && fit.r_squared >= 0.9;
    note(o, fit_ok, "fit rate " + fmt(fit.rate) + " >= 0.5, r^2 " +
                        fmt(fit.r_squared) + " >= 0.9 on " +
                        std::to_string(fit.n_points_used) + " points");
  } catch (const CheckError& e) {
    note(o, false, std::string("decay fit failed: ") + e.what());
  }

  const double e0 = reports[0].l2_hcurl_E + reports[0].l2_hcurl_H;
  double best_pre_floor = e0;
  for (const auto& r : reports) {
    const double err = r.l2_hcurl_E + r.l2_hcurl_H;
    if (err > 3.0 * g_sweep.floor_l2) best_pre_floor = std::min(best_pre_floor, err);
  }
  note(o, best_pre_floor <= std::exp(-2.0) * e0,
       "smallest pre-floor error " + fmt(best_pre_floor) + " <= e^-2 * " +
           fmt(e0));

  o.seconds = g_sweep_seconds;
  note(o, o.seconds < 900.0, "runtime " + fmt(o.seconds) + " s < 900 s");
  return o;
}

Outcome criterion_8_linf_decay() {
  Outcome o;
  const auto& reports = g_sweep.reports;
  note(o, reports.size() == 6, "reuses the six-point experiment");

  note(o, decays_to_floor(reports, true, g_sweep.floor_linf, o,
                          "peak-in-time error"),
       "monotone decay until the floor band");
  try {
    const DecayFit fit = fit_decay(reports, NormKind::Linf);
    note(o, fit.rate >= 0.5 && fit.r_squared >= 0.9,
         "fit rate " + fmt(fit.rate) + " >= 0.5, r^2 " + fmt(fit.r_squared) +
             " >= 0.9 on " + std::to_string(fit.n_points_used) + " points");
  } catch (const CheckError& e) {
    note(o, false, std::string("decay fit failed: ") + e.what());
  }
  o.seconds = 0.0;
  return o;
}

Outcome criterion_9_reference_insensitivity() {
  Outcome o;
  Timer timer;
  SweepConfig cfg;
  cfg.params.L = Eigen::Vector3d(2.0, 2.0, 2.0);
  cfg.params.d = 0.5;
  cfg.params.m = 1;
  cfg.params.s1 = 1.0;
  cfg.params.T = 2.0;
  cfg.h = 0.125;
  cfg.snapshots = 10;
  cfg.ref_margin = 1.0;
  cfg.sigma0_values = {4.0};
  cfg.source = short_pulse();
  cfg.validate();
  const SweepPlan plan = plan_sweep(cfg);
  const FieldHistory near = reference_run(cfg, plan, 1.0);
  const FieldHistory far = reference_run(cfg, plan, 2.0);
  const double sup = sup_difference(near, far);
  note(o, sup < 1e-12,
       "doubling the reference margin moves the window history by " +
           fmt(sup) + " < 1e-12");
  o.seconds = timer.elapsed();
  return o;
}

Outcome criterion_10_determinism() {
  Outcome o;
  Timer timer;
  SweepConfig cfg = convergence_config();
  cfg.validate();
  const SweepResult again = run_sweep(cfg);

  namespace fs = std::filesystem;
  fs::create_directories("acceptance_tmp");
  write_sweep_csv("acceptance_tmp/sweep_a.csv", g_sweep.reports);
  write_sweep_csv("acceptance_tmp/sweep_b.csv", again.reports);
  const bool same_csv = read_text_file("acceptance_tmp/sweep_a.csv") ==
                        read_text_file("acceptance_tmp/sweep_b.csv");
  note(o, same_csv, "repeated sweep writes byte-identical tables");

  bool same_fit = true;
  try {
    const DecayFit fa = fit_decay(g_sweep.reports, NormKind::L2);
    const DecayFit fb = fit_decay(again.reports, NormKind::L2);
    write_fit_csv("acceptance_tmp/fit_a.csv", fa);
    write_fit_csv("acceptance_tmp/fit_b.csv", fb);
    same_fit = read_text_file("acceptance_tmp/fit_a.csv") ==
               read_text_file("acceptance_tmp/fit_b.csv");
  } catch (const CheckError&) {
    same_fit = false;
  }
  note(o, same_fit, "repeated fit writes byte-identical summaries");
  o.seconds = timer.elapsed();
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"sampled complex-distance bounds", criterion_1_distance_bounds},
      {"stretched kernel modulus bound", criterion_2_kernel_bound},
      {"kernel derivative oracles", criterion_3_kernel_oracles},
      {"profile identities", criterion_4_profile_identities},
      {"zero-strength identity reduction", criterion_5_identity_reduction},
      {"long-run stability and energy trend", criterion_6_stability},
      {"exponential convergence, time-integrated", criterion_7_convergence},
      {"exponential convergence, peak-in-time", criterion_8_linf_decay},
      {"reference oracle insensitivity", criterion_9_reference_insensitivity},
      {"repeatable byte-identical outputs", criterion_10_determinism},
  };

  int failures = 0;
  int index = 0;
  for (const Entry& entry : entries) {
    ++index;
    Outcome o;
    try {
      o = entry.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "  [violated] unexpected exception: " << e.what() << "\n";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %2d: %s (%.1f s)\n%s",
                o.pass ? "PASS" : "FAIL", index, entry.name, o.seconds,
                o.detail.str().c_str());
  }
  std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
  return failures;
}
