#ifndef SHOCKLAB_FITTING_HPP
#define SHOCKLAB_FITTING_HPP

#include <vector>

namespace shocklab {

// Least-squares line y = intercept + slope*x with coefficient of
// determination r2 in [0,1] (r2 = 1 for an exact line).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fit y ~ A * x^p on log-log axes; returns slope p, intercept ln A, and r2.
// Requires positive data; non-positive samples raise NumericalError
// (fit_quality), as does a window of fewer than three points.
LineFit fit_power_law(const std::vector<double>& x,
                      const std::vector<double>& y);

// Fit ln y = ln A + p ln x, demanding r2 >= min_r2 (throws fit_quality
// otherwise). Used where a slope is only meaningful if the fit is clean.
LineFit fit_power_law_checked(const std::vector<double>& x,
                              const std::vector<double>& y, double min_r2);

}  // namespace shocklab

#endif
