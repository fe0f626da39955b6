#include "upml/norms.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"

namespace upml {

double weighted_l2_sq(const Array3& arr, const bool staggered[3], double h) {
  const int n[3] = {arr.nx, arr.ny, arr.nz};
  double total = 0.0;
  for (int k = 0; k < n[2]; ++k) {
    const double wk = staggered[2] ? 1.0 : ((k == 0 || k == n[2] - 1) ? 0.5 : 1.0);
    for (int j = 0; j < n[1]; ++j) {
      const double wj = staggered[1] ? 1.0 : ((j == 0 || j == n[1] - 1) ? 0.5 : 1.0);
      double row = 0.0;
      double row_end = 0.0;
      for (int i = 0; i < n[0]; ++i) {
        const double val = arr(i, j, k);
        if (!staggered[0] && (i == 0 || i == n[0] - 1)) {
          row_end += val * val;
        } else {
          row += val * val;
        }
      }
      total += wk * wj * (row + 0.5 * row_end);
    }
  }
  return total * h * h * h;
}

namespace {

double diff_l2_sq(const Array3& a, const Array3& b, const bool staggered[3],
                  double h) {
  if (!a.same_shape(b)) throw ConfigError("component shapes differ");
  const int n[3] = {a.nx, a.ny, a.nz};
  double total = 0.0;
  for (int k = 0; k < n[2]; ++k) {
    const double wk = staggered[2] ? 1.0 : ((k == 0 || k == n[2] - 1) ? 0.5 : 1.0);
    for (int j = 0; j < n[1]; ++j) {
      const double wj = staggered[1] ? 1.0 : ((j == 0 || j == n[1] - 1) ? 0.5 : 1.0);
      double row = 0.0;
      double row_end = 0.0;
      for (int i = 0; i < n[0]; ++i) {
        const double val = a(i, j, k) - b(i, j, k);
        if (!staggered[0] && (i == 0 || i == n[0] - 1)) {
          row_end += val * val;
        } else {
          row += val * val;
        }
      }
      total += wk * wj * (row + 0.5 * row_end);
    }
  }
  return total * h * h * h;
}

}  // namespace

HcurlInstant hcurl_difference(const Snapshot& a, const Snapshot& b, double h) {
  HcurlInstant out;
  for (int c = 0; c < 3; ++c) {
    const bool se[3] = {c == 0, c == 1, c == 2};
    const bool sh[3] = {c != 0, c != 1, c != 2};
    out.e_sq += diff_l2_sq(a.E[c], b.E[c], se, h);
    out.e_sq += diff_l2_sq(a.curlE[c], b.curlE[c], sh, h);
    out.h_sq += diff_l2_sq(a.H[c], b.H[c], sh, h);
    out.h_sq += diff_l2_sq(a.curlH[c], b.curlH[c], se, h);
  }
  return out;
}

ErrorAccumulator::ErrorAccumulator(const FieldHistory& ref) : ref_(ref) {
  if (ref.size() < 2) throw ConfigError("reference history needs >= 2 snapshots");
}

void ErrorAccumulator::add(const Snapshot& run_snapshot, std::size_t k) {
  if (k != fed_ || k >= ref_.size()) {
    throw ConfigError("snapshots must be fed in cadence order");
  }
  const Snapshot& ref_snap = ref_.at(k);
  if (std::fabs(ref_snap.t - run_snapshot.t) > 1e-9 * std::max(1.0, ref_snap.t)) {
    std::ostringstream oss;
    oss << "snapshot time " << run_snapshot.t << " does not match reference "
        << ref_snap.t;
    throw ConfigError(oss.str());
  }
  const HcurlInstant inst =
      hcurl_difference(run_snapshot, ref_snap, ref_.h());
  const double weight =
      (k == 0 || k + 1 == ref_.size()) ? 0.5 : 1.0;  // trapezoid in time
  l2e_ += weight * ref_.cadence() * inst.e_sq;
  l2h_ += weight * ref_.cadence() * inst.h_sq;
  linfe_ = std::max(linfe_, inst.e_sq);
  linfh_ = std::max(linfh_, inst.h_sq);
  ++fed_;
}

ErrorReport ErrorAccumulator::finish() const {
  if (fed_ != ref_.size()) {
    throw ConfigError("run history is shorter than the reference");
  }
  ErrorReport rep;
  rep.l2_hcurl_E = std::sqrt(l2e_);
  rep.l2_hcurl_H = std::sqrt(l2h_);
  rep.linf_hcurl_E = std::sqrt(linfe_);
  rep.linf_hcurl_H = std::sqrt(linfh_);
  return rep;
}

ErrorReport error_norms(const FieldHistory& ref, const FieldHistory& run) {
  if (ref.size() != run.size()) {
    throw ConfigError("histories have different snapshot counts");
  }
  ErrorAccumulator acc(ref);
  for (std::size_t k = 0; k < run.size(); ++k) acc.add(run.at(k), k);
  return acc.finish();
}

}  // namespace upml
