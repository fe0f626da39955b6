#pragma once

#include <vector>

#include "upml/history.hpp"

namespace upml {

/// Weighted discrete L2 square of one component array: spacing^3 times the
/// entry squares, trapezoid-weighted (half weight at both ends) along node
/// axes and unit-weighted along staggered axes, so a constant field of
/// value v on a window of volume V yields exactly v^2 V.
double weighted_l2_sq(const Array3& arr, const bool staggered[3], double h);

/// Curl-inclusive instantaneous norms of the difference of two snapshots.
struct HcurlInstant {
  double e_sq = 0.0;  ///< |dE|^2 + |curl dE|^2
  double h_sq = 0.0;  ///< |dH|^2 + |curl dH|^2
};
HcurlInstant hcurl_difference(const Snapshot& a, const Snapshot& b, double h);

/// Error norms of one absorber run against the reference, plus the sweep
/// bookkeeping the decay fit needs.
struct ErrorReport {
  double sigma0 = 0.0;
  double d = 0.0;
  double theory_exponent = 0.0;  ///< sigma0 * d * sqrt(eps mu) / 2
  double l2_hcurl_E = 0.0;       ///< sqrt(int_0^T |dE|^2 + |curl dE|^2 dt)
  double l2_hcurl_H = 0.0;
  double linf_hcurl_E = 0.0;     ///< max over instants of the same root
  double linf_hcurl_H = 0.0;
  double floor_estimate = 0.0;       ///< discretization scale, L2 flavor
  double floor_estimate_linf = 0.0;  ///< same from the instant maxima
};

/// Streams a run against a stored reference history snapshot by snapshot;
/// the time integral uses the trapezoid rule on the shared cadence.
class ErrorAccumulator {
 public:
  explicit ErrorAccumulator(const FieldHistory& ref);

  /// Feeds the run's snapshot number k (shapes and times must match).
  void add(const Snapshot& run_snapshot, std::size_t k);

  /// Finalizes after all snapshots were fed.
  ErrorReport finish() const;

 private:
  const FieldHistory& ref_;
  std::size_t fed_ = 0;
  double l2e_ = 0.0, l2h_ = 0.0;
  double linfe_ = 0.0, linfh_ = 0.0;
};

/// Convenience wrapper comparing two stored histories.
ErrorReport error_norms(const FieldHistory& ref, const FieldHistory& run);

}  // namespace upml
