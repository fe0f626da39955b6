#include "upml/history.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"

namespace upml {

namespace {

// Stagger pattern per stored array kind: E_a and curlH_a are staggered on
// axis a only; H_a and curlE_a on the two other axes.
bool e_staggered(int a, int axis) { return axis == a; }
bool h_staggered(int a, int axis) { return axis != a; }

int span(int cells, bool staggered) { return staggered ? cells : cells + 1; }

}  // namespace

RecordRegion region_for_box(const GridSpec& g, const Eigen::Vector3d& blo,
                            const Eigen::Vector3d& bhi) {
  RecordRegion r;
  std::ostringstream problems;
  for (int j = 0; j < 3; ++j) {
    const double lo_cells = (blo[j] - g.origin[j]) / g.h;
    const double n_cells = (bhi[j] - blo[j]) / g.h;
    if (!grid_aligned(blo[j] - g.origin[j], g.h) ||
        !grid_aligned(bhi[j] - blo[j], g.h)) {
      problems << "\n  - window face on axis " << j
               << " does not lie on a grid plane";
      continue;
    }
    r.lo[j] = int(std::lround(lo_cells));
    r.cells[j] = int(std::lround(n_cells));
    if (r.cells[j] < 1) problems << "\n  - window is empty on axis " << j;
    if (r.lo[j] < 1 || r.lo[j] + r.cells[j] > g.n[j] - 1) {
      problems << "\n  - window must stay one cell inside the walls on axis "
               << j;
    }
  }
  const std::string msg = problems.str();
  if (!msg.empty()) throw ConfigError("bad record window:" + msg);
  return r;
}

std::size_t Snapshot::bytes() const {
  std::size_t n = 0;
  for (int a = 0; a < 3; ++a) {
    n += E[a].size() + H[a].size() + curlE[a].size() + curlH[a].size();
  }
  return n * sizeof(double);
}

bool Snapshot::same_shape(const Snapshot& o) const {
  for (int a = 0; a < 3; ++a) {
    if (!E[a].same_shape(o.E[a]) || !H[a].same_shape(o.H[a]) ||
        !curlE[a].same_shape(o.curlE[a]) || !curlH[a].same_shape(o.curlH[a])) {
      return false;
    }
  }
  return true;
}

Snapshot record(const Simulation& sim, const RecordRegion& region) {
  Snapshot s;
  s.t = sim.time();
  const Eigen::Vector3i& lo = region.lo;
  const Eigen::Vector3i& c = region.cells;
  for (int a = 0; a < 3; ++a) {
    const int en[3] = {span(c[0], e_staggered(a, 0)),
                       span(c[1], e_staggered(a, 1)),
                       span(c[2], e_staggered(a, 2))};
    s.E[a] = Array3(en[0], en[1], en[2]);
    s.curlH[a] = Array3(en[0], en[1], en[2]);
    const Array3& ef = sim.field(Simulation::EX + a);
    for (int k = 0; k < en[2]; ++k)
      for (int j = 0; j < en[1]; ++j)
        for (int i = 0; i < en[0]; ++i) {
          s.E[a](i, j, k) = ef(lo[0] + i, lo[1] + j, lo[2] + k);
          s.curlH[a](i, j, k) = sim.curl_h(a, lo[0] + i, lo[1] + j, lo[2] + k);
        }
    const int hn[3] = {span(c[0], h_staggered(a, 0)),
                       span(c[1], h_staggered(a, 1)),
                       span(c[2], h_staggered(a, 2))};
    s.H[a] = Array3(hn[0], hn[1], hn[2]);
    s.curlE[a] = Array3(hn[0], hn[1], hn[2]);
    const Array3& hf = sim.field(Simulation::HX + a);
    for (int k = 0; k < hn[2]; ++k)
      for (int j = 0; j < hn[1]; ++j)
        for (int i = 0; i < hn[0]; ++i) {
          s.H[a](i, j, k) = hf(lo[0] + i, lo[1] + j, lo[2] + k);
          s.curlE[a](i, j, k) = sim.curl_e(a, lo[0] + i, lo[1] + j, lo[2] + k);
        }
  }
  return s;
}

FieldHistory::FieldHistory(RecordRegion region, double h, double cadence,
                           std::size_t budget_bytes)
    : region_(region), h_(h), cadence_(cadence), budget_(budget_bytes) {}

void FieldHistory::push(Snapshot&& s) {
  const std::size_t need = bytes_used_ + s.bytes();
  if (budget_ > 0 && need > budget_) {
    std::ostringstream oss;
    oss << "history budget exceeded: " << need << " bytes required, "
        << budget_ << " allowed";
    throw ConfigError(oss.str());
  }
  bytes_used_ = need;
  snaps_.push_back(std::move(s));
}

Snapshot snapshot_difference(const Snapshot& a, const Snapshot& b) {
  if (!a.same_shape(b)) {
    throw ConfigError("snapshot difference needs matching window shapes");
  }
  Snapshot out = a;
  for (int c = 0; c < 3; ++c) {
    Array3* po[4] = {&out.E[c], &out.H[c], &out.curlE[c], &out.curlH[c]};
    const Array3* pb[4] = {&b.E[c], &b.H[c], &b.curlE[c], &b.curlH[c]};
    for (int q = 0; q < 4; ++q) {
      for (std::size_t idx = 0; idx < po[q]->v.size(); ++idx) {
        po[q]->v[idx] -= pb[q]->v[idx];
      }
    }
  }
  return out;
}

namespace {

Array3 restrict_array(const Array3& fine, const bool stag[3]) {
  const int fn[3] = {fine.nx, fine.ny, fine.nz};
  int cn[3];
  for (int j = 0; j < 3; ++j) {
    if (stag[j]) {
      if (fn[j] % 2 != 0) throw ConfigError("fine window not 2:1 refinable");
      cn[j] = fn[j] / 2;
    } else {
      if (fn[j] % 2 != 1) throw ConfigError("fine window not 2:1 refinable");
      cn[j] = (fn[j] - 1) / 2;
      cn[j] += 1;  // node counts: fine 2c+1 -> coarse c+1
    }
  }
  Array3 out(cn[0], cn[1], cn[2]);
  for (int k = 0; k < cn[2]; ++k)
    for (int j = 0; j < cn[1]; ++j)
      for (int i = 0; i < cn[0]; ++i) {
        double acc = 0.0;
        int cnt = 0;
        const int base[3] = {2 * i, 2 * j, 2 * k};
        const int reps[3] = {stag[0] ? 2 : 1, stag[1] ? 2 : 1,
                             stag[2] ? 2 : 1};
        for (int dk = 0; dk < reps[2]; ++dk)
          for (int dj = 0; dj < reps[1]; ++dj)
            for (int di = 0; di < reps[0]; ++di) {
              acc += fine(base[0] + di, base[1] + dj, base[2] + dk);
              ++cnt;
            }
        out(i, j, k) = acc / cnt;
      }
  return out;
}

}  // namespace

Snapshot restrict_fine(const Snapshot& fine) {
  Snapshot out;
  out.t = fine.t;
  for (int a = 0; a < 3; ++a) {
    bool se[3], sh[3];
    for (int j = 0; j < 3; ++j) {
      se[j] = e_staggered(a, j);
      sh[j] = h_staggered(a, j);
    }
    out.E[a] = restrict_array(fine.E[a], se);
    out.curlH[a] = restrict_array(fine.curlH[a], se);
    out.H[a] = restrict_array(fine.H[a], sh);
    out.curlE[a] = restrict_array(fine.curlE[a], sh);
  }
  return out;
}

double sup_difference(const FieldHistory& a, const FieldHistory& b) {
  if (a.size() != b.size()) {
    throw ConfigError("histories have different snapshot counts");
  }
  double sup = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Snapshot& sa = a.at(k);
    const Snapshot& sb = b.at(k);
    if (!sa.same_shape(sb)) {
      throw ConfigError("histories have different window shapes");
    }
    for (int c = 0; c < 3; ++c) {
      const Array3* pa[4] = {&sa.E[c], &sa.H[c], &sa.curlE[c], &sa.curlH[c]};
      const Array3* pb[4] = {&sb.E[c], &sb.H[c], &sb.curlE[c], &sb.curlH[c]};
      for (int q = 0; q < 4; ++q) {
        for (std::size_t idx = 0; idx < pa[q]->v.size(); ++idx) {
          sup = std::max(sup, std::fabs(pa[q]->v[idx] - pb[q]->v[idx]));
        }
      }
    }
  }
  return sup;
}

}  // namespace upml
