#include "upml/snapshot_io.hpp"

#include <cstring>
#include <fstream>

#include "upml/errors.hpp"

namespace upml {

namespace {

constexpr char kMagic[6] = {'U', 'P', 'M', 'L', '1', '\0'};
constexpr std::uint8_t kDtypeF64 = 1;

void require_little_endian() {
  const std::uint32_t probe = 1;
  std::uint8_t first;
  std::memcpy(&first, &probe, 1);
  if (first != 1) throw IoError("field files require a little-endian host");
}

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::ifstream& in, T& v, const std::string& path) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError("truncated field file: " + path);
}

}  // namespace

void write_field_file(const std::string& path, const Array3& a,
                      std::uint32_t component, double time) {
  require_little_endian();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t dims[3] = {std::uint64_t(a.nz), std::uint64_t(a.ny),
                                 std::uint64_t(a.nx)};
  put(out, dims[0]);
  put(out, dims[1]);
  put(out, dims[2]);
  put(out, component);
  put(out, time);
  put(out, kDtypeF64);
  out.write(reinterpret_cast<const char*>(a.v.data()),
            std::streamsize(a.v.size() * sizeof(double)));
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

Array3 read_field_file(const std::string& path, std::uint32_t* component,
                       double* time) {
  require_little_endian();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError("bad magic in field file: " + path);
  }
  std::uint64_t dims[3];
  get(in, dims[0], path);
  get(in, dims[1], path);
  get(in, dims[2], path);
  std::uint32_t comp = 0;
  double t = 0.0;
  std::uint8_t dtype = 0;
  get(in, comp, path);
  get(in, t, path);
  get(in, dtype, path);
  if (dtype != kDtypeF64) throw IoError("unsupported dtype in " + path);
  for (const std::uint64_t dim : dims) {
    if (dim == 0 || dim > (std::uint64_t(1) << 20)) {
      throw IoError("field file dimensions out of range: " + path);
    }
  }
  Array3 a{int(dims[2]), int(dims[1]), int(dims[0])};
  in.read(reinterpret_cast<char*>(a.v.data()),
          std::streamsize(a.v.size() * sizeof(double)));
  if (!in) throw IoError("truncated field file: " + path);
  if (component) *component = comp;
  if (time) *time = t;
  return a;
}

}  // namespace upml
