// Command-line front end: parses one JSON run file, dispatches to the
// check/simulate/reference/sweep/fit/report operations, and records a
// manifest per command. Exit codes: 0 ok, 1 configuration, 2 numerical,
// 3 failed check, 4 i/o.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "upml/config.hpp"
#include "upml/csv.hpp"
#include "upml/errors.hpp"
#include "upml/fit.hpp"
#include "upml/grid.hpp"
#include "upml/history.hpp"
#include "upml/kernel_checks.hpp"
#include "upml/manifest.hpp"
#include "upml/rng.hpp"
#include "upml/simulation.hpp"
#include "upml/snapshot_io.hpp"
#include "upml/sweep.hpp"
#include "upml/version.hpp"

namespace {

using namespace upml;

struct Session {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 20260815ULL;
  int threads = 1;
  bool emit_plots = false;

  RunManifest manifest;
  std::optional<Config> config;

  std::string path(const std::string& name) const {
    return (std::filesystem::path(out_dir) / name).string();
  }

  void begin(const std::string& command, bool needs_config) {
    manifest.tool_version = kToolVersion;
    manifest.command = command;
    manifest.seed = seed;
    manifest.rng = CounterRng::name();
    manifest.started = utc_timestamp_now();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);
    if (needs_config) {
      if (config_path.empty()) {
        throw ConfigError("this command needs --config <file>");
      }
      std::vector<std::string> warnings;
      config = parse_config(config_path, &warnings);
      for (const std::string& w : warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      manifest.config_digest = config_digest(*config);
      const std::string echo = path("config.echo.json");
      write_text_file(echo, canonical_config(*config));
      manifest.outputs.push_back(echo);
      std::cout << "config digest " << manifest.config_digest << "\n";
    }
  }

  void finish() {
    manifest.finished = utc_timestamp_now();
    write_manifest(path("manifest_" + manifest.command + ".json"), manifest);
  }
};

void run_check_kernels(Session& s) {
  const Config& c = *s.config;
  bool all_pass = true;
  const auto show = [&all_pass](const std::vector<PropertyResult>& results) {
    for (const PropertyResult& r : results) {
      std::cout << (r.pass ? "  pass  " : "  FAIL  ") << r.name << "  worst "
                << format_g17(r.worst) << "  limit " << format_g17(r.limit)
                << "\n";
      all_pass = all_pass && r.pass;
    }
  };
  std::cout << "profile property suite\n";
  show(profile_property_suite(c.params, s.seed));
  std::cout << "kernel property suite\n";
  show(kernel_property_suite(c.params, s.seed + 1));

  const DecayCheckReport rep = decay_bound_check(
      c.params, c.kernels.samples, s.seed + 2, c.kernels.s2_span,
      c.kernels.tol);
  const std::string csv = s.path("kernel_report.csv");
  write_kernel_report_csv(csv, rep.rows);
  s.manifest.outputs.push_back(csv);
  std::cout << "distance and kernel bounds: " << rep.samples << " samples, "
            << rep.violations << " violations\n"
            << "  min Re rho " << format_g17(rep.min_re_rho) << " (needs >= "
            << format_g17(rep.re_rho_bound) << ")\n"
            << "  min |rho/s| " << format_g17(rep.min_abs_rho_over_s)
            << " (needs >= " << format_g17(rep.rho_over_s_bound) << ")\n"
            << "  max |phi| " << format_g17(rep.max_phi_abs) << " (bound "
            << format_g17(rep.phi_bound) << ")\n";
  if (!all_pass || rep.violations > 0) {
    throw CheckError("kernel or profile checks failed");
  }
}

void run_simulate(Session& s) {
  const Config& c = *s.config;
  const GridSpec g = make_grid(c.params, c.h);
  const double dt = cfl_timestep(g, c.params, c.cfl);
  Simulation sim = Simulation::build(g, c.params, c.source, c.scatterer, dt,
                                     false, s.threads);
  const int steps = c.simulate.steps > 0
                        ? c.simulate.steps
                        : int(std::ceil(c.params.T / dt - 1e-12));

  // Nearest staggered sample of every component to the probe point.
  std::size_t probe_idx[6];
  for (int comp = 0; comp < 6; ++comp) {
    const bool is_e = comp < 3;
    const int a = comp % 3;
    const Array3& arr = sim.field(comp);
    const int lim[3] = {arr.nx, arr.ny, arr.nz};
    int idx[3];
    for (int j = 0; j < 3; ++j) {
      const bool centered = is_e ? (j == a) : (j != a);
      const double cells =
          (c.simulate.probe[j] - g.origin[j]) / g.h - (centered ? 0.5 : 0.0);
      idx[j] = std::min(lim[j] - 1, std::max(0, int(std::lround(cells))));
    }
    probe_idx[comp] = arr.idx(idx[0], idx[1], idx[2]);
  }

  std::vector<ProbeSample> rows;
  rows.reserve(std::size_t(steps) + 1);
  const auto sample = [&](double t) {
    ProbeSample row;
    row.t = t;
    for (int compi = 0; compi < 6; ++compi) {
      row.f[compi] = sim.field(compi).v[probe_idx[compi]];
    }
    rows.push_back(row);
  };
  sample(0.0);
  for (int n = 0; n < steps; ++n) {
    sim.step();
    sample(sim.time());
  }

  const std::string probe_csv = s.path("probe.csv");
  write_probe_csv(probe_csv, rows);
  s.manifest.outputs.push_back(probe_csv);
  static const char* names[6] = {"Ex", "Ey", "Ez", "Hx", "Hy", "Hz"};
  for (int compi = 0; compi < 6; ++compi) {
    const std::string file = s.path(std::string("final_") + names[compi] + ".bin");
    write_field_file(file, sim.field(compi), std::uint32_t(compi), sim.time());
    s.manifest.outputs.push_back(file);
  }
  std::cout << "ran " << steps << " steps, dt " << format_g17(dt)
            << ", final time " << format_g17(sim.time()) << "\n"
            << "final energy " << format_g17(sim.energy()) << "\n";
}

void run_reference(Session& s) {
  const Config& c = *s.config;
  const SweepConfig sc = c.sweep_config(s.threads);
  const SweepPlan plan = plan_sweep(sc);
  const FieldHistory hist = reference_run(sc, plan);
  const Snapshot& last = hist.at(hist.size() - 1);
  static const char* axes[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    const struct {
      const char* tag;
      const Array3* arr;
      std::uint32_t comp;
    } files[4] = {{"E", &last.E[a], std::uint32_t(a)},
                  {"H", &last.H[a], std::uint32_t(3 + a)},
                  {"curlE", &last.curlE[a], std::uint32_t(6 + a)},
                  {"curlH", &last.curlH[a], std::uint32_t(9 + a)}};
    for (const auto& f : files) {
      const std::string file =
          s.path(std::string("window_") + f.tag + axes[a] + ".bin");
      write_field_file(file, *f.arr, f.comp, last.t);
      s.manifest.outputs.push_back(file);
    }
  }
  std::cout << "reference half extent "
            << format_g17(std::ceil(sc.reference_half_extent() / sc.h - 1e-9) *
                          sc.h)
            << ", dt " << format_g17(plan.dt) << ", " << hist.size()
            << " snapshots, " << hist.bytes_used() << " bytes recorded\n";
}

void run_sweep_cmd(Session& s) {
  const Config& c = *s.config;
  const SweepConfig sc = c.sweep_config(s.threads);
  const SweepResult result = run_sweep(sc);
  const std::string csv = s.path("sweep.csv");
  write_sweep_csv(csv, result.reports);
  s.manifest.outputs.push_back(csv);
  if (s.emit_plots) {
    const std::string dat = s.path("sweep.dat");
    write_sweep_plot(dat, result.reports);
    s.manifest.outputs.push_back(dat);
  }
  std::cout << "dt " << format_g17(result.plan.dt) << ", "
            << result.plan.steps_per_snapshot << " steps per snapshot\n";
  for (const ErrorReport& r : result.reports) {
    std::cout << "  sigma0 " << format_g17(r.sigma0) << "  d "
              << format_g17(r.d) << "  exponent "
              << format_g17(r.theory_exponent) << "  l2 "
              << format_g17(r.l2_hcurl_E + r.l2_hcurl_H) << "  linf "
              << format_g17(r.linf_hcurl_E + r.linf_hcurl_H) << "\n";
  }
  std::cout << "floor estimate l2 " << format_g17(result.floor_l2)
            << ", linf " << format_g17(result.floor_linf) << "\n";
}

void run_fit(Session& s) {
  const std::vector<ErrorReport> reports =
      read_sweep_csv(s.path("sweep.csv"));
  const DecayFit fit = fit_decay(reports, NormKind::L2);
  const std::string csv = s.path("fit.csv");
  write_fit_csv(csv, fit);
  s.manifest.outputs.push_back(csv);
  std::cout << "rate " << format_g17(fit.rate) << "  intercept "
            << format_g17(fit.intercept) << "  r_squared "
            << format_g17(fit.r_squared) << "  points " << fit.n_points_used
            << "\n";
}

void run_report(Session& s) {
  const std::vector<ErrorReport> reports =
      read_sweep_csv(s.path("sweep.csv"));
  if (reports.empty()) throw CheckError("sweep.csv has no rows");

  // The exponent column must be one consistent multiple of sigma0*d.
  double scale = 0.0;
  for (const ErrorReport& r : reports) {
    if (r.sigma0 * r.d > 0.0) {
      scale = r.theory_exponent / (r.sigma0 * r.d);
      break;
    }
  }
  for (const ErrorReport& r : reports) {
    const double expect = scale * r.sigma0 * r.d;
    if (std::fabs(r.theory_exponent - expect) >
        1e-9 * std::max(1.0, std::fabs(expect))) {
      throw CheckError("theory_exponent column inconsistent with sigma0*d");
    }
  }

  std::cout << "sigma0      d        exponent   l2 error     linf error   "
               "vs first\n";
  const double first =
      reports.front().l2_hcurl_E + reports.front().l2_hcurl_H;
  for (const ErrorReport& r : reports) {
    const double l2 = r.l2_hcurl_E + r.l2_hcurl_H;
    const double linf = r.linf_hcurl_E + r.linf_hcurl_H;
    std::printf("%-10.4g %-8.4g %-10.4g %-12.5g %-12.5g %-10.4g\n", r.sigma0,
                r.d, r.theory_exponent, l2, linf,
                first > 0.0 ? l2 / first : 0.0);
  }
  std::cout << "floor estimate " << format_g17(reports.front().floor_estimate)
            << "\n";
  try {
    const CsvTable fit = read_numeric_csv(s.path("fit.csv"));
    if (!fit.rows.empty() && fit.column("rate") >= 0) {
      std::cout << "fitted decay rate "
                << format_g17(fit.rows[0][fit.column("rate")])
                << " per unit exponent (r_squared "
                << format_g17(fit.rows[0][fit.column("r_squared")]) << ", "
                << int(fit.rows[0][fit.column("n_points_used")])
                << " points)\n";
    }
  } catch (const IoError&) {
    std::cout << "no fit.csv found; run the fit command for the decay rate\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniaxial absorbing-layer lab for time-domain Maxwell runs"};
  app.fallthrough();
  app.require_subcommand(1);

  Session s;
  app.add_option("--config", s.config_path, "run file (JSON)");
  app.add_option("--seed", s.seed, "seed for sampled checks");
  app.add_option("--out", s.out_dir, "output directory (default: out)");
  app.add_option("--threads", s.threads, "worker threads")
      ->envname("UPML_THREADS");
  app.add_flag("--emit-plots", s.emit_plots,
               "also write plot-friendly .dat files");

  CLI::App* cmds[6] = {
      app.add_subcommand("check-kernels",
                         "sampled profile and kernel inequality suites"),
      app.add_subcommand("simulate",
                         "one absorber run with probe series and final fields"),
      app.add_subcommand("reference",
                         "enlarged-domain vacuum oracle on the inner window"),
      app.add_subcommand("sweep", "error sweep against a shared reference"),
      app.add_subcommand("fit", "exponential decay fit of sweep.csv"),
      app.add_subcommand("report", "render sweep.csv and fit.csv as text")};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const bool needs_config[6] = {true, true, true, true, false, false};
  void (*actions[6])(Session&) = {run_check_kernels, run_simulate,
                                  run_reference,     run_sweep_cmd,
                                  run_fit,           run_report};
  try {
    for (int i = 0; i < 6; ++i) {
      if (cmds[i]->parsed()) {
        s.begin(cmds[i]->get_name(), needs_config[i]);
        actions[i](s);
        s.finish();
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const CheckError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
