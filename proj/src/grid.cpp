#include "upml/grid.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"

namespace upml {

bool grid_aligned(double v, double h) {
  const double cells = v / h;
  return std::fabs(cells - std::round(cells)) <= 1e-9 * std::max(1.0, cells);
}

GridSpec make_grid(const PmlParams& p, double h) {
  if (!(h > 0.0)) throw ConfigError("grid spacing h must be positive");
  std::ostringstream problems;
  for (int j = 0; j < 3; ++j) {
    if (!grid_aligned(0.5 * p.L[j], h)) {
      problems << "\n  - L[" << j << "]/2 = " << 0.5 * p.L[j]
               << " is not a multiple of h = " << h
               << "; the inner interface must lie on cell faces";
    }
  }
  if (!grid_aligned(p.d, h)) {
    problems << "\n  - layer thickness d = " << p.d
             << " is not a multiple of h = " << h
             << "; the outer boundary must lie on cell faces";
  }
  GridSpec g;
  g.h = h;
  for (int j = 0; j < 3; ++j) {
    g.n[j] = int(std::round((p.L[j] + 2.0 * p.d) / h));
    if (g.n[j] < 8) {
      problems << "\n  - grid has " << g.n[j] << " cells along axis " << j
               << "; need at least 8";
    }
    g.origin[j] = -(0.5 * p.L[j] + p.d);
  }
  const std::string msg = problems.str();
  if (!msg.empty()) throw ConfigError("grid misaligned with geometry:" + msg);
  return g;
}

GridSpec make_box_grid(const Eigen::Vector3d& half, double h) {
  if (!(h > 0.0)) throw ConfigError("grid spacing h must be positive");
  GridSpec g;
  g.h = h;
  for (int j = 0; j < 3; ++j) {
    if (!grid_aligned(half[j], h)) {
      std::ostringstream oss;
      oss << "box half extent " << half[j] << " is not a multiple of h = " << h;
      throw ConfigError(oss.str());
    }
    g.n[j] = int(std::round(2.0 * half[j] / h));
    if (g.n[j] < 8) {
      throw ConfigError("box grid needs at least 8 cells per axis");
    }
    g.origin[j] = -half[j];
  }
  return g;
}

double cfl_timestep(const GridSpec& g, const PmlParams& p, double cfl) {
  if (!(cfl > 0.0) || cfl > 1.0) {
    std::ostringstream oss;
    oss << "cfl factor " << cfl << " outside (0, 1]";
    throw ConfigError(oss.str());
  }
  return cfl * g.h / (p.wave_speed_max() * std::sqrt(3.0));
}

}  // namespace upml
