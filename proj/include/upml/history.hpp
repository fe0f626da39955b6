#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "upml/array3.hpp"
#include "upml/grid.hpp"
#include "upml/simulation.hpp"

namespace upml {

/// Cell-aligned index window of a grid (used to restrict fields to the
/// inner box or another observation region).
struct RecordRegion {
  Eigen::Vector3i lo{0, 0, 0};     ///< first cell index per axis
  Eigen::Vector3i cells{0, 0, 0};  ///< cell counts per axis
};

/// Window covering the physical box [blo, bhi] on the grid; the box faces
/// must lie on grid planes and at least one cell inside the domain walls.
RecordRegion region_for_box(const GridSpec& g, const Eigen::Vector3d& blo,
                            const Eigen::Vector3d& bhi);

/// Fields and discrete curls restricted to a window at one instant.
/// E[a] and curlH[a] live on the window's E_a sub-lattice, H[a] and
/// curlE[a] on the H_a sub-lattice.
struct Snapshot {
  double t = 0.0;
  std::array<Array3, 3> E, H, curlE, curlH;

  std::size_t bytes() const;
  bool same_shape(const Snapshot& o) const;
};

/// Samples the simulation on the window. The window must be interior so
/// every curl stencil is complete.
Snapshot record(const Simulation& sim, const RecordRegion& region);

/// Cadenced sequence of snapshots with an explicit byte budget.
class FieldHistory {
 public:
  FieldHistory() = default;
  FieldHistory(RecordRegion region, double h, double cadence,
               std::size_t budget_bytes);

  /// Appends; throws ConfigError with the required byte count when the
  /// budget would be exceeded.
  void push(Snapshot&& s);

  const RecordRegion& region() const { return region_; }
  double h() const { return h_; }
  double cadence() const { return cadence_; }
  std::size_t size() const { return snaps_.size(); }
  const Snapshot& at(std::size_t k) const { return snaps_[k]; }
  std::size_t bytes_used() const { return bytes_used_; }

 private:
  RecordRegion region_;
  double h_ = 0.0;
  double cadence_ = 0.0;
  std::size_t budget_ = 0;
  std::size_t bytes_used_ = 0;
  std::vector<Snapshot> snaps_;
};

/// Elementwise a - b over every stored array; shapes must match. The time
/// stamp of a is kept.
Snapshot snapshot_difference(const Snapshot& a, const Snapshot& b);

/// 2:1 coarsening of a snapshot recorded on an h/2 grid onto the h lattice:
/// direct injection on node axes, two-point averages on staggered axes.
/// The fine window must span twice as many cells per axis.
Snapshot restrict_fine(const Snapshot& fine);

/// Largest absolute entry difference over two equally shaped histories.
double sup_difference(const FieldHistory& a, const FieldHistory& b);

}  // namespace upml
