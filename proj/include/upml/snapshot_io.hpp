#pragma once

#include <cstdint>
#include <string>

#include "upml/array3.hpp"

namespace upml {

/// Binary field-array format. Layout, all little-endian:
///   magic "UPML1\0" (6 bytes)
///   u64 dims[3], slowest to fastest (nz, ny, nx)
///   u32 component id (0..5 for Ex..Hz; 6..11 for curl components)
///   f64 sample time
///   u8 dtype (1 = f64)
///   payload: nx*ny*nz doubles, first array index fastest
void write_field_file(const std::string& path, const Array3& a,
                      std::uint32_t component, double time);

/// Reads a file written by write_field_file; throws IoError on any
/// malformed header or truncated payload.
Array3 read_field_file(const std::string& path, std::uint32_t* component,
                       double* time);

}  // namespace upml
