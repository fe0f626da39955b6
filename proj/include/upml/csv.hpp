#pragma once

#include <array>
#include <string>
#include <vector>

#include "upml/fit.hpp"
#include "upml/kernel_checks.hpp"
#include "upml/norms.hpp"

namespace upml {

/// %.17g rendering shared by every text output, so repeated runs produce
/// byte-identical files.
std::string format_g17(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

void write_kernel_report_csv(const std::string& path,
                             const std::vector<KernelSweepRow>& rows);
void write_sweep_csv(const std::string& path,
                     const std::vector<ErrorReport>& reports);
void write_fit_csv(const std::string& path, const DecayFit& fit);

/// Whitespace-separated variant of the sweep table for plotting tools,
/// with a commented header line.
void write_sweep_plot(const std::string& path,
                      const std::vector<ErrorReport>& reports);

struct ProbeSample {
  double t = 0.0;
  std::array<double, 6> f{};  // Ex, Ey, Ez, Hx, Hy, Hz
};
void write_probe_csv(const std::string& path,
                     const std::vector<ProbeSample>& rows);

/// Header plus all-numeric rows; anything else throws IoError.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  ///< -1 when absent
};
CsvTable read_numeric_csv(const std::string& path);

/// Rebuilds sweep reports from the CSV written by write_sweep_csv.
std::vector<ErrorReport> read_sweep_csv(const std::string& path);

}  // namespace upml
