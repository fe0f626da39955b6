#pragma once

#include <cstddef>
#include <vector>

namespace upml {

// Contiguous 3d array of doubles, first index fastest.
struct Array3 {
  int nx = 0, ny = 0, nz = 0;
  std::vector<double> v;

  Array3() = default;
  Array3(int x, int y, int z)
      : nx(x), ny(y), nz(z), v(std::size_t(x) * y * z, 0.0) {}

  std::size_t idx(int i, int j, int k) const {
    return std::size_t(i) + std::size_t(nx) * (std::size_t(j) + std::size_t(ny) * k);
  }
  double& operator()(int i, int j, int k) { return v[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v[idx(i, j, k)]; }

  std::size_t size() const { return v.size(); }
  bool same_shape(const Array3& o) const {
    return nx == o.nx && ny == o.ny && nz == o.nz;
  }
};

}  // namespace upml
