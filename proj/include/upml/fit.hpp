#pragma once

#include <vector>

#include "upml/norms.hpp"

namespace upml {

/// Straight-line least squares y = a + b x.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

/// Exponential decay fit of sweep errors against the theory exponent.
struct DecayFit {
  double rate = 0.0;       ///< positive when the error decays
  double intercept = 0.0;  ///< log of the fitted prefactor
  double r_squared = 0.0;
  int n_points_used = 0;
};

enum class NormKind { L2, Linf };

/// Fits log(err_E + err_H) against theory_exponent using only points above
/// 3x the floor estimate. Throws CheckError naming the floor when fewer
/// than 3 points survive.
DecayFit fit_decay(const std::vector<ErrorReport>& reports,
                   NormKind kind = NormKind::L2);

}  // namespace upml
