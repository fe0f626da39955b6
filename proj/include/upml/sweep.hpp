#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "upml/history.hpp"
#include "upml/norms.hpp"
#include "upml/params.hpp"
#include "upml/source.hpp"

namespace upml {

/// One convergence experiment: a shared vacuum reference plus one absorber
/// run per (sigma0, d) pair, all compared on the inner-box window.
struct SweepConfig {
  PmlParams params;  ///< base material and geometry; params.sigma0 is unused
  std::vector<double> sigma0_values;
  std::vector<double> d_values;  ///< empty selects {params.d}
  double h = 1.0 / 16.0;
  double cfl = 0.9;
  int snapshots = 60;        ///< cadence intervals over [0, T]
  double ref_margin = 1.0;   ///< reference padding beyond c T / 2
  SourceSpec source;
  std::optional<ScattererSpec> scatterer;
  int threads = 1;
  std::size_t history_budget = std::size_t{3} << 30;

  /// Resolves defaults and validates every rule across the run matrix;
  /// throws ConfigError listing all violations.
  void validate();

  /// Reference half extent before grid rounding:
  /// max_j L_j/2 + c T/2 + ref_margin with c the vacuum speed.
  double reference_half_extent() const;
};

/// Discretization shared by every run of one sweep. The step divides the
/// snapshot cadence exactly, so recorded instants line up across runs and
/// identical interior arithmetic cancels bitwise in the error.
struct SweepPlan {
  double dt = 0.0;
  int steps_per_snapshot = 0;
  int n_snapshots = 0;  ///< intervals; instants recorded = n_snapshots + 1
  double cadence = 0.0;
};

SweepPlan plan_sweep(const SweepConfig& cfg);

/// Vacuum run (sigma0 = 0 everywhere) on the enlarged domain, recording the
/// inner-box window. The wall sits too far away for any reflection to reach
/// the window within (0, T), so this realizes the open-space solution there.
/// margin_scale multiplies ref_margin plus the c T/2 padding (insensitivity
/// checks double it).
FieldHistory reference_run(const SweepConfig& cfg, const SweepPlan& plan,
                           double margin_scale = 1.0);

/// One absorber run at (sigma0, d) recording the same window.
FieldHistory absorber_run(const SweepConfig& cfg, const SweepPlan& plan,
                          double sigma0, double d);

struct SweepResult {
  SweepPlan plan;
  std::vector<ErrorReport> reports;  ///< sorted by sigma0 * d ascending
  double floor_l2 = 0.0;
  double floor_linf = 0.0;
};

/// Runs the whole matrix against one shared reference. The discretization
/// floor comes from the largest sigma0*d pair: when that run delays the
/// wall echo clear of (0, T] its own error norms are the floor; otherwise
/// the error signal is recomputed on a 2h grid pair and the h vs 2h
/// difference is Richardson-scaled. Stored in every report; 0 when neither
/// route applies.
SweepResult run_sweep(const SweepConfig& cfg);

/// Boundedness surrogate for the absorber system: the peak over recorded
/// instants of ||dE/dt|| + ||curl E|| + ||dH/dt|| + ||curl H|| on the full
/// domain, compared with (1 + sigma0 T)^3 * ||J||_{H1(0,T)}.
struct StabilityReport {
  double sigma0 = 0.0;
  double T = 0.0;
  double max_norm_sum = 0.0;
  double source_h1 = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  int steps = 0;
};

/// Time derivatives use centered differences of cadenced snapshots; curls
/// are the solver's own stencils. Throws NumericalError on any non-finite
/// field (step index included by the stepper).
StabilityReport stability_probe(const PmlParams& params, double h, double cfl,
                                const SourceSpec& src, int snapshots,
                                int threads = 1);

/// sqrt of the integral of J^2 + (dJ/dt)^2 over (0, T) for the Gaussian
/// waveform, by composite Simpson quadrature.
double source_h1_norm(const SourceSpec& src, double T);

}  // namespace upml
