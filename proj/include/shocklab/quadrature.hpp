#ifndef SHOCKLAB_QUADRATURE_HPP
#define SHOCKLAB_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace shocklab {

// Trapezoid rule over uniformly spaced samples.
double trapezoid(const std::vector<double>& values, double h);

// Composite Simpson with n (even) intervals on [a,b].
double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int n);

// Adaptive Simpson with absolute/relative tolerance. Throws NumericalError
// (quadrature) if the recursion depth limit is hit before the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, double abs_tol,
                        int max_depth = 48);

// Adaptive Simpson on [a,b] with the interval pre-split into geometrically
// growing panels from `first_width`. Robust for integrands with algebraic
// tails over intervals spanning many orders of magnitude.
double adaptive_simpson_geometric(const std::function<double(double)>& f,
                                  double a, double b, double first_width,
                                  double rel_tol, double abs_tol);

}  // namespace shocklab

#endif
