#include "upml/simulation.hpp"

#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "upml/errors.hpp"

namespace upml {

namespace {

// Static slab split over the slowest index; disjoint writes keep every
// thread count bit-identical.
template <typename Fn>
void for_slabs(int n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2 * threads) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int k0 = t * chunk;
    const int k1 = std::min(n, k0 + chunk);
    if (k0 >= k1) break;
    pool.emplace_back([&fn, k0, k1] { fn(k0, k1); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

Eigen::Vector3d Simulation::e_point(int a, int i, int j, int k) const {
  Eigen::Vector3d x(grid_.node(0, i), grid_.node(1, j), grid_.node(2, k));
  const int idx[3] = {i, j, k};
  x[a] = grid_.center(a, idx[a]);
  return x;
}

Eigen::Vector3d Simulation::h_point(int a, int i, int j, int k) const {
  Eigen::Vector3d x(grid_.center(0, i), grid_.center(1, j), grid_.center(2, k));
  const int idx[3] = {i, j, k};
  x[a] = grid_.node(a, idx[a]);
  return x;
}

Simulation Simulation::build(const GridSpec& g, const PmlParams& p,
                             const SourceSpec& src,
                             const std::optional<ScattererSpec>& scatterer,
                             double dt, bool force_vacuum, int threads) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const double stable = g.h / (p.wave_speed_max() * std::sqrt(3.0));
  if (dt > stable * (1.0 + 1e-12)) {
    std::ostringstream oss;
    oss << "time step " << dt << " exceeds the stable limit " << stable;
    throw ConfigError(oss.str());
  }

  Simulation sim;
  sim.grid_ = g;
  sim.params_ = p;
  sim.src_ = src;
  sim.dt_ = dt;
  sim.threads_ = std::max(1, threads);
  sim.vacuum_ = force_vacuum;

  const int nx = g.n[0], ny = g.n[1], nz = g.n[2];
  sim.f_[EX] = Array3(nx, ny + 1, nz + 1);
  sim.f_[EY] = Array3(nx + 1, ny, nz + 1);
  sim.f_[EZ] = Array3(nx + 1, ny + 1, nz);
  sim.f_[HX] = Array3(nx + 1, ny, nz);
  sim.f_[HY] = Array3(nx, ny + 1, nz);
  sim.f_[HZ] = Array3(nx, ny, nz + 1);
  for (int c = 0; c < 6; ++c) {
    sim.c_[c] = Array3(sim.f_[c].nx, sim.f_[c].ny, sim.f_[c].nz);
  }

  // Coefficient arrays: dt * BA_aa / (eps or mu) / h at each sample's own
  // physical coordinates. A zero-strength profile samples to exactly 1.
  const double ce0 = dt / (p.eps * g.h);
  const double ch0 = dt / (p.mu * g.h);
  for (int a = 0; a < 3; ++a) {
    Array3& ce = sim.c_[EX + a];
    for (int k = 0; k < ce.nz; ++k) {
      for (int j = 0; j < ce.ny; ++j) {
        for (int i = 0; i < ce.nx; ++i) {
          const double ba =
              force_vacuum
                  ? 1.0
                  : stretch_tensors(p, sim.e_point(a, i, j, k)).ba[a];
          ce(i, j, k) = ce0 * ba;
        }
      }
    }
    Array3& ch = sim.c_[HX + a];
    for (int k = 0; k < ch.nz; ++k) {
      for (int j = 0; j < ch.ny; ++j) {
        for (int i = 0; i < ch.nx; ++i) {
          const double ba =
              force_vacuum
                  ? 1.0
                  : stretch_tensors(p, sim.h_point(a, i, j, k)).ba[a];
          ch(i, j, k) = ch0 * ba;
        }
      }
    }
  }

  // Spread the dipole over the edges of its polarization component that
  // straddle the requested point, with trilinear weights. The discrete
  // moment then sits at the requested point itself rather than the nearest
  // lattice edge; a lattice-aligned location collapses to a single edge.
  {
    const int a = src.polarization;
    if (a < 0 || a > 2) throw ConfigError("source polarization must be 0..2");
    const Array3& arr = sim.f_[EX + a];
    int base[3];
    double frac[3];
    for (int j = 0; j < 3; ++j) {
      const double cells =
          (src.location[j] - g.origin[j]) / g.h - (j == a ? 0.5 : 0.0);
      double low = std::floor(cells);
      double th = cells - low;
      if (th < 1e-9) th = 0.0;
      if (th > 1.0 - 1e-9) {
        th = 0.0;
        low += 1.0;
      }
      base[j] = int(low);
      frac[j] = th;
    }
    const int lim[3] = {arr.nx, arr.ny, arr.nz};
    for (int j = 0; j < 3; ++j) {
      const int hi = base[j] + (frac[j] > 0.0 ? 1 : 0);
      if (base[j] < 2 || hi > lim[j] - 3) {
        throw ConfigError(
            "source edge must keep two cells clearance to the outer wall");
      }
    }
    sim.src_comp_ = EX + a;
    for (int dk = 0; dk <= (frac[2] > 0.0 ? 1 : 0); ++dk) {
      for (int dj = 0; dj <= (frac[1] > 0.0 ? 1 : 0); ++dj) {
        for (int di = 0; di <= (frac[0] > 0.0 ? 1 : 0); ++di) {
          const double w = (di ? frac[0] : 1.0 - frac[0]) *
                           (dj ? frac[1] : 1.0 - frac[1]) *
                           (dk ? frac[2] : 1.0 - frac[2]);
          const int i = base[0] + di, j = base[1] + dj, k = base[2] + dk;
          const double ba = force_vacuum
                                ? 1.0
                                : stretch_tensors(p, sim.e_point(a, i, j, k)).ba[a];
          sim.src_taps_.emplace_back(arr.idx(i, j, k), w * dt * ba / p.eps);
        }
      }
    }
  }

  if (scatterer) {
    scatterer->validate(p, g.h);
    int lo[3], hi[3];
    for (int j = 0; j < 3; ++j) {
      lo[j] = int(std::lround((scatterer->lo[j] - g.origin[j]) / g.h));
      hi[j] = int(std::lround((scatterer->hi[j] - g.origin[j]) / g.h));
    }
    // Every E edge whose closed extent lies in the closed cuboid: the
    // tangential surface edges plus the sealed interior.
    for (int a = 0; a < 3; ++a) {
      const Array3& arr = sim.f_[EX + a];
      for (int k = 0; k < arr.nz; ++k) {
        for (int j = 0; j < arr.ny; ++j) {
          for (int i = 0; i < arr.nx; ++i) {
            const int s[3] = {i, j, k};
            bool in = true;
            for (int ax = 0; ax < 3; ++ax) {
              const int e0 = s[ax];
              const int e1 = s[ax] + (ax == a ? 1 : 0);
              in = in && e0 >= lo[ax] && e1 <= hi[ax];
            }
            if (in) sim.pec_edges_.emplace_back(EX + a, arr.idx(i, j, k));
          }
        }
      }
    }
  }

  return sim;
}

void Simulation::update_h() {
  const Array3 &ex = f_[EX], &ey = f_[EY], &ez = f_[EZ];
  {
    Array3& hx = f_[HX];
    const Array3& c = c_[HX];
    for_slabs(hx.nz, threads_, [&](int k0, int k1) {
      for (int k = k0; k < k1; ++k)
        for (int j = 0; j < hx.ny; ++j)
          for (int i = 0; i < hx.nx; ++i)
            hx(i, j, k) -= c(i, j, k) * (ez(i, j + 1, k) - ez(i, j, k) -
                                         ey(i, j, k + 1) + ey(i, j, k));
    });
  }
  {
    Array3& hy = f_[HY];
    const Array3& c = c_[HY];
    for_slabs(hy.nz, threads_, [&](int k0, int k1) {
      for (int k = k0; k < k1; ++k)
        for (int j = 0; j < hy.ny; ++j)
          for (int i = 0; i < hy.nx; ++i)
            hy(i, j, k) -= c(i, j, k) * (ex(i, j, k + 1) - ex(i, j, k) -
                                         ez(i + 1, j, k) + ez(i, j, k));
    });
  }
  {
    Array3& hz = f_[HZ];
    const Array3& c = c_[HZ];
    for_slabs(hz.nz, threads_, [&](int k0, int k1) {
      for (int k = k0; k < k1; ++k)
        for (int j = 0; j < hz.ny; ++j)
          for (int i = 0; i < hz.nx; ++i)
            hz(i, j, k) -= c(i, j, k) * (ey(i + 1, j, k) - ey(i, j, k) -
                                         ex(i, j + 1, k) + ex(i, j, k));
    });
  }
}

void Simulation::update_e(double t_half) {
  const Array3 &hx = f_[HX], &hy = f_[HY], &hz = f_[HZ];
  {
    Array3& ex = f_[EX];
    const Array3& c = c_[EX];
    for_slabs(ex.nz - 2, threads_, [&](int k0, int k1) {
      for (int k = k0 + 1; k < k1 + 1; ++k)
        for (int j = 1; j < ex.ny - 1; ++j)
          for (int i = 0; i < ex.nx; ++i)
            ex(i, j, k) += c(i, j, k) * (hz(i, j, k) - hz(i, j - 1, k) -
                                         hy(i, j, k) + hy(i, j, k - 1));
    });
  }
  {
    Array3& ey = f_[EY];
    const Array3& c = c_[EY];
    for_slabs(ey.nz - 2, threads_, [&](int k0, int k1) {
      for (int k = k0 + 1; k < k1 + 1; ++k)
        for (int j = 0; j < ey.ny; ++j)
          for (int i = 1; i < ey.nx - 1; ++i)
            ey(i, j, k) += c(i, j, k) * (hx(i, j, k) - hx(i, j, k - 1) -
                                         hz(i, j, k) + hz(i - 1, j, k));
    });
  }
  {
    Array3& ez = f_[EZ];
    const Array3& c = c_[EZ];
    for_slabs(ez.nz, threads_, [&](int k0, int k1) {
      for (int k = k0; k < k1; ++k)
        for (int j = 1; j < ez.ny - 1; ++j)
          for (int i = 1; i < ez.nx - 1; ++i)
            ez(i, j, k) += c(i, j, k) * (hy(i, j, k) - hy(i - 1, j, k) -
                                         hx(i, j, k) + hx(i, j - 1, k));
    });
  }
  const double j_val = src_.waveform(t_half);
  for (const auto& [flat, coeff] : src_taps_) {
    f_[src_comp_].v[flat] -= coeff * j_val;
    injected_ += std::fabs(coeff * j_val);
  }
}

void Simulation::apply_scatterer() {
  for (const auto& [comp, flat] : pec_edges_) f_[comp].v[flat] = 0.0;
}

void Simulation::check_finite() const {
  for (int c = 0; c < 6; ++c) {
    bool clean = true;
    for (const double x : f_[c].v) clean = clean && std::fabs(x) < 1e300;
    if (clean) continue;
    const Array3& arr = f_[c];
    for (int k = 0; k < arr.nz; ++k)
      for (int j = 0; j < arr.ny; ++j)
        for (int i = 0; i < arr.nx; ++i)
          if (!(std::fabs(arr(i, j, k)) < 1e300)) {
            static const char* names[6] = {"Ex", "Ey", "Ez",
                                           "Hx", "Hy", "Hz"};
            std::ostringstream oss;
            oss << "non-finite " << names[c] << " at step " << step_ + 1
                << ", index (" << i << ", " << j << ", " << k << ")";
            throw NumericalError(oss.str());
          }
  }
}

void Simulation::step() {
  update_h();
  update_e(time() + 0.5 * dt_);
  apply_scatterer();
  check_finite();
  ++step_;
}

double Simulation::curl_e(int a, int i, int j, int k) const {
  const double inv_h = 1.0 / grid_.h;
  switch (a) {
    case 0:
      return (f_[EZ](i, j + 1, k) - f_[EZ](i, j, k) - f_[EY](i, j, k + 1) +
              f_[EY](i, j, k)) *
             inv_h;
    case 1:
      return (f_[EX](i, j, k + 1) - f_[EX](i, j, k) - f_[EZ](i + 1, j, k) +
              f_[EZ](i, j, k)) *
             inv_h;
    default:
      return (f_[EY](i + 1, j, k) - f_[EY](i, j, k) - f_[EX](i, j + 1, k) +
              f_[EX](i, j, k)) *
             inv_h;
  }
}

double Simulation::curl_h(int a, int i, int j, int k) const {
  const double inv_h = 1.0 / grid_.h;
  switch (a) {
    case 0:
      return (f_[HZ](i, j, k) - f_[HZ](i, j - 1, k) - f_[HY](i, j, k) +
              f_[HY](i, j, k - 1)) *
             inv_h;
    case 1:
      return (f_[HX](i, j, k) - f_[HX](i, j, k - 1) - f_[HZ](i, j, k) +
              f_[HZ](i - 1, j, k)) *
             inv_h;
    default:
      return (f_[HY](i, j, k) - f_[HY](i - 1, j, k) - f_[HX](i, j, k) +
              f_[HX](i, j - 1, k)) *
             inv_h;
  }
}

double Simulation::energy() const {
  if (!energy_w_ready_) {
    for (int c = 0; c < 6; ++c) {
      const Array3& f = f_[c];
      Array3& w = energy_w_[c];
      w = Array3(f.nx, f.ny, f.nz);
      const int a = c % 3;
      const double mat = c < 3 ? params_.eps : params_.mu;
      for (int k = 0; k < f.nz; ++k) {
        for (int j = 0; j < f.ny; ++j) {
          for (int i = 0; i < f.nx; ++i) {
            const double ba_inv =
                vacuum_ ? 1.0
                        : stretch_tensors(params_,
                                          c < 3 ? e_point(a, i, j, k)
                                                : h_point(a, i, j, k))
                              .ba_inv[a];
            w(i, j, k) = mat * ba_inv;
          }
        }
      }
    }
    energy_w_ready_ = true;
  }
  double total = 0.0;
  for (int c = 0; c < 6; ++c) {
    const Array3& f = f_[c];
    const Array3& w = energy_w_[c];
    for (std::size_t k = 0; k < f.size(); ++k)
      total += w.v[k] * f.v[k] * f.v[k];
  }
  return 0.5 * grid_.h * grid_.h * grid_.h * total;
}

}  // namespace upml
