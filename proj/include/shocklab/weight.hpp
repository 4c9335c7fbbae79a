#ifndef SHOCKLAB_WEIGHT_HPP
#define SHOCKLAB_WEIGHT_HPP

#include <functional>
#include <vector>

#include "shocklab/waves.hpp"

namespace shocklab {

// Piecewise weight in the state variable v = u^S, C^2 across both junctions:
//   v in (u_minus, 0):      w = (5/2) u_m (u_m - v)
//   v in [0, u_m/2):        w = 5/(2 u_m^2) (u_m - v)(4 v^3 + u_m^3)
//   v in [u_m/2, u_m):      w = (15/8) u_m^2
// Bounds: (15/8)u_m^2 <= w < (15/2)u_m^2, -(5/2)u_m <= w' <= 0,
// 0 <= w'' <= 15/2. Defined on the state value so composition with shifted
// profiles happens at call sites; endpoints evaluate to their limit values.
class WeightFunction {
public:
  explicit WeightFunction(const WaveParameters& params);

  struct Jet {
    double w;
    double w1;  // dw/dv
    double w2;  // d2w/dv2
  };

  Jet eval_all(double v) const;
  double eval(double v) const { return eval_all(v).w; }
  double eval_d1(double v) const { return eval_all(v).w1; }
  double eval_d2(double v) const { return eval_all(v).w2; }

  double max_value() const;  // supremum (5/2) u_m (u_m - u_minus)
  double min_value() const;  // (15/8) u_m^2

  const WaveParameters& params() const { return params_; }

private:
  WaveParameters params_;
};

// Pointwise weight-algebra sweep. H1 and H2 are the two brace groups of the
// localized quadratic form controlling the compressive zone:
//   H1 = [(sigma - 3v^2) w' + 3 v w - (w''/2)(v - u_minus)(v - u_mid)^2]
//        * (u_star - u_minus)
//   H2 = w w'' (u_star - v)(v + 2 u_mid) + 2 w^2 + w w' (u_star + u_minus - 2v)
// (mu U' was eliminated through the profile ODE, so everything is a function
// of the state value alone). closed_form carries the independently derived
// polynomial evaluation of the same quantities; the two must agree to
// round-off. poincare_factor is 1 - w (u_star - v) * 2 / (5 u_mid (u_mid-v)^2),
// which must exceed 1/6 strictly inside (u_minus, u_star).
struct WeightAlgebraReport {
  std::vector<double> us;         // sample states in [u_minus, u_mid)
  std::vector<double> w, w1, w2;  // weight jet
  std::vector<double> H1, H2, sum;
  std::vector<double> closed_form_sum;
  std::vector<double> poincare_factor;

  double min_sum;          // min of H1+H2 over the sweep
  double min_sum_location;
  double max_two_way_gap;  // max relative gap |sum - closed_form|/|sum|
  // Worst (smallest) poincare factor among samples strictly inside
  // (u_minus, u_star); quiet NaN when no sample lies there.
  double min_poincare_factor;
  double min_poincare_location;

  // First sample violating H1+H2 > 2 u_mid^4 or the 1/6 bound, if any.
  bool has_counterexample;
  double counterexample_location;
  std::string counterexample_what;
};

WeightAlgebraReport weight_algebra(const WeightFunction& wf, int n_samples);

// Two-sided check of the weighted variance inequality on [0,1],
//   int f^2 - (int f)^2 <= 1/2 int y(1-y) f'(y)^2 dy,
// by composite Simpson on n_intervals panels. The quadrature error bound is
// estimated by Richardson comparison against half resolution; `satisfied`
// means lhs <= rhs + error_bound.
struct PoincareCheck {
  double lhs;
  double rhs;
  double error_bound;
  bool satisfied;
};

PoincareCheck poincare_check(const std::function<double(double)>& f,
                             const std::function<double(double)>& fprime,
                             int n_intervals = 2048);

}  // namespace shocklab

#endif
