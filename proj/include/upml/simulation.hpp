#pragma once

#include <array>
#include <optional>

#include "upml/array3.hpp"
#include "upml/grid.hpp"
#include "upml/params.hpp"
#include "upml/profiles.hpp"
#include "upml/source.hpp"

namespace upml {

// NOTES on the discretization.
//
// Staggered leapfrog on a uniform grid. E components sit on cell edges, H
// components on cell faces; E lives at integer time steps, H at half steps.
// The medium enters only through the diagonal tensor BA sampled at each
// staggered point's own coordinates:
//
//   dE/dt = (1/eps) BA (curl H - J),   dH/dt = -(1/mu) BA curl E.
//
// Array shapes for n = (nx, ny, nz) cells:
//   Ex (nx,   ny+1, nz+1)   Hx (nx+1, ny,   nz  )
//   Ey (nx+1, ny,   nz+1)   Hy (nx,   ny+1, nz  )
//   Ez (nx+1, ny+1, nz  )   Hz (nx,   ny,   nz+1)
//
// The outer boundary is a PEC wall: tangential E edges on it are never
// updated and stay exactly zero. An optional PEC cuboid zeroes every E edge
// contained in its closed index box after each step.
class Simulation {
 public:
  enum Comp { EX = 0, EY, EZ, HX, HY, HZ };

  /// Assembles coefficient arrays and masks. force_vacuum skips profile
  /// sampling and fills unit coefficients (reference runs). dt must be
  /// positive and at or below the stable step.
  static Simulation build(const GridSpec& g, const PmlParams& p,
                          const SourceSpec& src,
                          const std::optional<ScattererSpec>& scatterer,
                          double dt, bool force_vacuum = false,
                          int threads = 1);

  /// Advances H by one half-offset step and E by one full step, injects the
  /// source at the half-step time, applies PEC masks, and verifies all
  /// entries are finite (throws NumericalError naming step and location).
  void step();

  int step_index() const { return step_; }
  double time() const { return step_ * dt_; }
  double dt() const { return dt_; }
  const GridSpec& grid() const { return grid_; }
  const PmlParams& params() const { return params_; }
  const SourceSpec& source() const { return src_; }

  const Array3& field(int comp) const { return f_[comp]; }
  Array3& field(int comp) { return f_[comp]; }
  const Array3& coefficient(int comp) const { return c_[comp]; }

  /// Discrete curl of E, component a, at the H_a point (i, j, k).
  double curl_e(int a, int i, int j, int k) const;
  /// Discrete curl of H, component a, at the interior E_a point (i, j, k).
  double curl_h(int a, int i, int j, int k) const;

  /// 0.5 h^3 sum over every staggered sample of eps (BA_aa)^-1 E_a^2 and
  /// mu (BA_aa)^-1 H_a^2, each weighted at its own location. This is the
  /// quadratic form the update conserves: once the source is quiet it holds
  /// steady up to the bounded E/H time-stagger oscillation.
  double energy() const;

  /// Accumulated |injected source amplitude| * dt / eps, a crude scale for
  /// qualitative boundedness checks.
  double injected_scale() const { return injected_; }

  /// Physical coordinates of a staggered sample.
  Eigen::Vector3d e_point(int a, int i, int j, int k) const;
  Eigen::Vector3d h_point(int a, int i, int j, int k) const;

 private:
  Simulation() = default;
  void update_h();
  void update_e(double t_half);
  void apply_scatterer();
  void check_finite() const;

  GridSpec grid_;
  PmlParams params_;
  SourceSpec src_;
  double dt_ = 0.0;
  int step_ = 0;
  int threads_ = 1;
  std::array<Array3, 6> f_;  // Ex, Ey, Ez, Hx, Hy, Hz
  std::array<Array3, 6> c_;  // matching update coefficients, 1/h folded in
  // source edges of one polarization component with trilinear weights, so
  // the dipole acts at its requested point; flat index, weight * dt * BA / eps
  int src_comp_ = 2;
  std::vector<std::pair<std::size_t, double>> src_taps_;
  double injected_ = 0.0;
  std::vector<std::pair<int, std::size_t>> pec_edges_;  // scatterer mask
  bool vacuum_ = false;
  mutable std::array<Array3, 6> energy_w_;  // lazy per-sample weights
  mutable bool energy_w_ready_ = false;
};

}  // namespace upml
