#include "upml/params.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"

namespace upml {

std::vector<std::string> PmlParams::validate() {
  std::vector<std::string> problems;
  std::vector<std::string> warnings;

  auto bad = [&problems](const std::string& msg) { problems.push_back(msg); };

  if (!(eps > 0.0) || !std::isfinite(eps)) bad("eps must be a positive finite number");
  if (!(mu > 0.0) || !std::isfinite(mu)) bad("mu must be a positive finite number");
  for (int j = 0; j < 3; ++j) {
    if (!(L[j] > 0.0) || !std::isfinite(L[j])) {
      bad("inner box edge length L[" + std::to_string(j) + "] must be positive");
    }
  }
  if (!(d > 0.0) || !std::isfinite(d)) bad("layer thickness d must be positive");
  if (!(sigma0 >= 0.0) || !std::isfinite(sigma0)) bad("sigma0 must be non-negative");
  if (m < 1) bad("profile exponent m must be an integer >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) bad("final time T must be positive");

  if (s1 == 0.0 && T > 0.0) s1 = 1.0 / T;
  if (!(s1 > 0.0) || !std::isfinite(s1)) bad("abscissa s1 must be positive");

  if (!problems.empty()) {
    std::ostringstream oss;
    oss << "invalid parameters:";
    for (const auto& p : problems) oss << "\n  - " << p;
    throw ConfigError(oss.str());
  }

  if (d < 1.0) {
    warnings.push_back(
        "layer thickness d < 1: the supported regime assumes a layer at "
        "least one unit thick; results may degrade");
  }
  if (L.maxCoeff() / d > aspect_limit) {
    std::ostringstream oss;
    oss << "aspect ratio max(L)/d = " << L.maxCoeff() / d << " exceeds "
        << aspect_limit << "; the layer is thin relative to the box";
    warnings.push_back(oss.str());
  }
  return warnings;
}

}  // namespace upml
