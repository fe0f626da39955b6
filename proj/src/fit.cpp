#include "upml/fit.hpp"

#include <cmath>
#include <sstream>

#include "upml/errors.hpp"

namespace upml {

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("linear fit needs at least two matching samples");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw ConfigError("linear fit abscissae are all identical");
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  // Degenerate exact-constant data counts as a perfect fit.
  f.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

DecayFit fit_decay(const std::vector<ErrorReport>& reports, NormKind kind) {
  std::vector<double> xs;
  std::vector<double> ys;
  double floor_seen = 0.0;
  for (const auto& r : reports) {
    const double err = (kind == NormKind::L2)
                           ? (r.l2_hcurl_E + r.l2_hcurl_H)
                           : (r.linf_hcurl_E + r.linf_hcurl_H);
    const double floor = (kind == NormKind::L2) ? r.floor_estimate
                                                : r.floor_estimate_linf;
    floor_seen = std::max(floor_seen, floor);
    if (!(err > 3.0 * floor)) continue;  // at or below the resolution floor
    if (!(err > 0.0) || !std::isfinite(err)) continue;
    xs.push_back(r.theory_exponent);
    ys.push_back(std::log(err));
  }
  if (xs.size() < 3) {
    std::ostringstream msg;
    msg << "decay fit needs at least 3 points above 3x the discretization "
           "floor ("
        << floor_seen << "); only " << xs.size() << " remain";
    throw CheckError(msg.str());
  }
  const LinearFit lf = linear_fit(xs, ys);
  DecayFit df;
  df.rate = -lf.slope;  // decay: log err falls as the exponent grows
  df.intercept = lf.intercept;
  df.r_squared = lf.r_squared;
  df.n_points_used = static_cast<int>(xs.size());
  return df;
}

}  // namespace upml
