#include "upml/source.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"
#include "upml/grid.hpp"

namespace upml {

void SourceSpec::validate(const PmlParams& p) const {
  std::ostringstream problems;
  if (polarization < 0 || polarization > 2) {
    problems << "\n  - polarization must be 0, 1 or 2";
  }
  for (int j = 0; j < 3; ++j) {
    if (!(std::fabs(location[j]) < 0.5 * p.L[j])) {
      problems << "\n  - source location component " << j << " = "
               << location[j] << " is not strictly inside the inner box";
    }
  }
  if (!(tau > 0.0)) problems << "\n  - pulse width tau must be positive";
  if (tau > 0.0 && t0 + 1e-12 * tau < 6.0 * tau) {
    problems << "\n  - pulse center t0 = " << t0 << " must be at least 6 tau = "
             << 6.0 * tau << " so the pulse is at rest at t = 0";
  }
  if (!std::isfinite(amplitude)) problems << "\n  - amplitude must be finite";
  const std::string msg = problems.str();
  if (!msg.empty()) throw ConfigError("invalid source:" + msg);
}

void ScattererSpec::validate(const PmlParams& p, double h) const {
  std::ostringstream problems;
  for (int j = 0; j < 3; ++j) {
    if (!(lo[j] < hi[j])) {
      problems << "\n  - scatterer extents must satisfy lo < hi on axis " << j;
      continue;
    }
    if (!grid_aligned(lo[j] - (-0.5 * p.L[j] - p.d), h) ||
        !grid_aligned(hi[j] - (-0.5 * p.L[j] - p.d), h)) {
      problems << "\n  - scatterer faces on axis " << j
               << " do not lie on grid planes (h = " << h << ")";
    }
    if (lo[j] < -0.5 * p.L[j] + 2.0 * h || hi[j] > 0.5 * p.L[j] - 2.0 * h) {
      problems << "\n  - scatterer must keep >= 2 cells clearance to the "
               << "inner interface on axis " << j;
    }
  }
  const std::string msg = problems.str();
  if (!msg.empty()) throw ConfigError("invalid scatterer:" + msg);
}

}  // namespace upml
