#include "shocklab/fitting.hpp"

#include <cmath>

#include "shocklab/common.hpp"

namespace shocklab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3)
    throw NumericalError(NumericalError::Kind::fit_quality,
                         "line fit needs at least three matched samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0)
    throw NumericalError(NumericalError::Kind::fit_quality,
                         "line fit abscissas are all identical");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

LineFit fit_power_law(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size())
    throw NumericalError(NumericalError::Kind::fit_quality,
                         "power-law fit needs matched sample vectors");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw NumericalError(NumericalError::Kind::fit_quality,
                           "power-law fit requires positive samples");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly);
}

LineFit fit_power_law_checked(const std::vector<double>& x,
                              const std::vector<double>& y, double min_r2) {
  const LineFit fit = fit_power_law(x, y);
  if (!(fit.r2 >= min_r2))
    throw NumericalError(NumericalError::Kind::fit_quality,
                         "power-law fit r2 = " + std::to_string(fit.r2) +
                             " is below the required " +
                             std::to_string(min_r2));
  return fit;
}

}  // namespace shocklab
