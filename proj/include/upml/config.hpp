#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "upml/params.hpp"
#include "upml/source.hpp"
#include "upml/sweep.hpp"

namespace upml {

/// Sampling sizes for the kernel and profile check suites.
struct KernelCheckConfig {
  std::size_t samples = 10000;
  double s2_span = 10.0;
  double tol = 1e-10;
};

/// Extras consumed only by the plain `simulate` command.
struct SimulateConfig {
  int steps = 0;  ///< explicit step count; 0 runs to time T
  Eigen::Vector3d probe{0.25, 0.0, 0.0};
};

/// Everything one run file can specify. Unknown keys are rejected so typos
/// do not silently fall back to defaults.
struct Config {
  PmlParams params;
  double h = 1.0 / 16.0;
  double cfl = 0.9;
  SourceSpec source;
  std::optional<ScattererSpec> scatterer;
  std::vector<double> sigma0_values;  ///< empty selects {params.sigma0}
  std::vector<double> d_values;       ///< empty selects {params.d}
  int snapshots = 60;
  double ref_margin = 1.0;
  std::size_t history_budget = std::size_t{3} << 30;
  KernelCheckConfig kernels;
  SimulateConfig simulate;

  /// Validates every block, resolving defaults in place (s1, value lists);
  /// throws ConfigError listing all violations, returns warnings.
  std::vector<std::string> validate();

  /// Assembles the convergence-experiment view of this file.
  SweepConfig sweep_config(int threads = 1) const;
};

/// Reads and validates a run file. Missing file or unreadable path throws
/// IoError; malformed text or broken rules throw ConfigError. Warnings are
/// appended when a sink is given.
Config parse_config(const std::string& path,
                    std::vector<std::string>* warnings = nullptr);

/// Canonical serialized form: keys sorted, floats printed with 17
/// significant digits. Parsing the echo reproduces the same bytes.
std::string canonical_config(const Config& c);

/// FNV-1a 64-bit digest of the canonical form, as 16 hex characters.
std::string config_digest(const Config& c);

}  // namespace upml
