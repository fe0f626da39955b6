#pragma once

namespace upml {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace upml
