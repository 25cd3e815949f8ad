#pragma once

#include <vector>

namespace fracheat {

// Least-squares line through (log x, log y): y ~ C x^{slope}.
// rms_residual is the root-mean-square misfit in log space.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // log C
  double rms_residual = 0.0;
  int points = 0;
};

// Pairs with y <= 0 or x <= 0 are skipped; fewer than 2 usable points is an
// error.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fracheat
