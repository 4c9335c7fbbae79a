#include "shocklab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/common.hpp"

namespace shocklab {

double trapezoid(const std::vector<double>& values, double h) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * h;
}

double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int n) {
  if (n < 2 || n % 2 != 0)
    throw NumericalError(NumericalError::Kind::quadrature,
                         "composite Simpson needs an even interval count");
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

namespace {

struct SimpsonPanel {
  double integral;
  double fm;  // midpoint sample, reused by the children
};

SimpsonPanel simpson_panel(const std::function<double(double)>& f, double a,
                           double fa, double b, double fb) {
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  return {(b - a) / 6.0 * (fa + 4.0 * fm + fb), fm};
}

double adaptive_rec(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, const SimpsonPanel& whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const SimpsonPanel left = simpson_panel(f, a, fa, m, whole.fm);
  const SimpsonPanel right = simpson_panel(f, m, whole.fm, b, fb);
  const double delta = left.integral + right.integral - whole.integral;
  if (std::abs(delta) <= 15.0 * tol)
    return left.integral + right.integral + delta / 15.0;
  if (depth <= 0)
    throw NumericalError(NumericalError::Kind::quadrature,
                         "adaptive Simpson hit the depth limit before the "
                         "tolerance");
  return adaptive_rec(f, a, fa, m, whole.fm, left, 0.5 * tol, depth - 1) +
         adaptive_rec(f, m, whole.fm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b);
  const SimpsonPanel whole = simpson_panel(f, a, fa, b, fb);
  const double scale = std::max(std::abs(whole.integral), 1e-300);
  const double tol = std::max(abs_tol, rel_tol * scale);
  return adaptive_rec(f, a, fa, b, fb, whole, tol, max_depth);
}

double adaptive_simpson_geometric(const std::function<double(double)>& f,
                                  double a, double b, double first_width,
                                  double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  if (first_width <= 0.0)
    throw NumericalError(NumericalError::Kind::quadrature,
                         "geometric panel width must be positive");
  double total = 0.0;
  double left = a;
  double width = first_width;
  while (left < b) {
    const double right = std::min(left + width, b);
    total += adaptive_simpson(f, left, right, rel_tol,
                              abs_tol * (right - left) / (b - a));
    left = right;
    width *= 2.0;
  }
  return total;
}

}  // namespace shocklab
