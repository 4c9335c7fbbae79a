#include "shocklab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shocklab/common.hpp"
#include "shocklab/quadrature.hpp"

namespace shocklab {

WeightFunction::WeightFunction(const WaveParameters& params)
    : params_(params) {
  if (!(params_.u_minus < 0.0 && params_.u_mid > 0.0))
    throw ConfigError("weight needs u_minus < 0 < u_mid");
}

WeightFunction::Jet WeightFunction::eval_all(double v) const {
  const double um = params_.u_mid;
  v = std::clamp(v, params_.u_minus, um);
  if (v < 0.0) {
    return {2.5 * um * (um - v), -2.5 * um, 0.0};
  }
  if (v < 0.5 * um) {
    const double c = 2.5 / (um * um);
    const double w = c * (um - v) * (4.0 * v * v * v + um * um * um);
    const double w1 = c * (-16.0 * v * v * v + 12.0 * um * v * v - um * um * um);
    const double w2 = c * (-48.0 * v * v + 24.0 * um * v);
    return {w, w1, w2};
  }
  return {1.875 * um * um, 0.0, 0.0};
}

double WeightFunction::max_value() const {
  return 2.5 * params_.u_mid * (params_.u_mid - params_.u_minus);
}

double WeightFunction::min_value() const {
  return 1.875 * params_.u_mid * params_.u_mid;
}

namespace {

// Independently derived polynomial value of H1 + H2, written in r = v / u_mid
// so a single coefficient list covers every u_mid.
double closed_form_sum(const WaveParameters& p, double v) {
  const double um = p.u_mid;
  const double um4 = um * um * um * um;
  const double r = v / um;
  if (v < 0.0) return um4 * (25.0 / 8.0) * (1.0 - r);
  if (v < 0.5 * um) {
    const double c[9] = {25.0 / 8.0, -25.0 / 8.0, -75.0 / 2.0,
                         325.0,      775.0 / 2.0, -3225.0,
                         3950.0,     400.0,       -1800.0};
    double acc = c[8];
    for (int k = 7; k >= 0; --k) acc = acc * r + c[k];
    return um4 * acc;
  }
  return um4 * (225.0 / 32.0 + 225.0 / 16.0 * r);
}

}  // namespace

WeightAlgebraReport weight_algebra(const WeightFunction& wf, int n_samples) {
  if (n_samples < 2) throw ConfigError("weight sweep needs >= 2 samples");
  const WaveParameters& p = wf.params();
  const double um = p.u_mid;
  const double um4 = um * um * um * um;
  const double span = um - p.u_minus;

  WeightAlgebraReport rep;
  rep.min_sum = std::numeric_limits<double>::infinity();
  rep.min_sum_location = p.u_minus;
  rep.max_two_way_gap = 0.0;
  rep.min_poincare_factor = std::numeric_limits<double>::quiet_NaN();
  rep.min_poincare_location = std::numeric_limits<double>::quiet_NaN();
  rep.has_counterexample = false;
  rep.counterexample_location = 0.0;

  for (int i = 0; i < n_samples; ++i) {
    const double v = p.u_minus + span * i / n_samples;
    const WeightFunction::Jet jet = wf.eval_all(v);
    const double gm = v - p.u_minus;          // v - u_minus
    const double gb = v - um;                 // v - u_mid
    const double H1 = ((p.sigma - 3.0 * v * v) * jet.w1 + 3.0 * v * jet.w -
                       0.5 * jet.w2 * gm * gb * gb) *
                      (p.u_star - p.u_minus);
    const double H2 = jet.w * jet.w2 * (p.u_star - v) * (v + 2.0 * um) +
                      2.0 * jet.w * jet.w +
                      jet.w * jet.w1 * (p.u_star + p.u_minus - 2.0 * v);
    const double sum = H1 + H2;
    const double closed = closed_form_sum(p, v);
    const double gap =
        std::abs(sum - closed) / std::max(std::abs(sum), 1e-300);
    const double denom = um - v;
    const double factor =
        1.0 - jet.w * (p.u_star - v) * 2.0 / (5.0 * um * denom * denom);

    rep.us.push_back(v);
    rep.w.push_back(jet.w);
    rep.w1.push_back(jet.w1);
    rep.w2.push_back(jet.w2);
    rep.H1.push_back(H1);
    rep.H2.push_back(H2);
    rep.sum.push_back(sum);
    rep.closed_form_sum.push_back(closed);
    rep.poincare_factor.push_back(factor);

    if (sum < rep.min_sum) {
      rep.min_sum = sum;
      rep.min_sum_location = v;
    }
    rep.max_two_way_gap = std::max(rep.max_two_way_gap, gap);

    // The compression bound is claimed on the open interval (u_minus, u_star);
    // at v = u_minus the factor equals 1/6 exactly, so the endpoint is not a
    // violation.
    const bool interior = v > p.u_minus && v < p.u_star;
    if (interior &&
        (std::isnan(rep.min_poincare_factor) || factor < rep.min_poincare_factor)) {
      rep.min_poincare_factor = factor;
      rep.min_poincare_location = v;
    }

    if (!rep.has_counterexample) {
      if (!(sum > 2.0 * um4)) {
        rep.has_counterexample = true;
        rep.counterexample_location = v;
        rep.counterexample_what = "H1+H2 fell to or below 2 u_mid^4";
      } else if (interior && !(factor > 1.0 / 6.0)) {
        rep.has_counterexample = true;
        rep.counterexample_location = v;
        rep.counterexample_what = "compression factor fell to or below 1/6";
      }
    }
  }
  return rep;
}

PoincareCheck poincare_check(const std::function<double(double)>& f,
                             const std::function<double(double)>& fprime,
                             int n_intervals) {
  const int n = std::max(8, (n_intervals + 3) / 4 * 4);
  const auto f2 = [&](double y) { return f(y) * f(y); };
  const auto wf2 = [&](double y) {
    const double fp = fprime(y);
    return y * (1.0 - y) * fp * fp;
  };
  const double If_c = composite_simpson(f, 0.0, 1.0, n / 2);
  const double If = composite_simpson(f, 0.0, 1.0, n);
  const double If2_c = composite_simpson(f2, 0.0, 1.0, n / 2);
  const double If2 = composite_simpson(f2, 0.0, 1.0, n);
  const double Iw_c = composite_simpson(wf2, 0.0, 1.0, n / 2);
  const double Iw = composite_simpson(wf2, 0.0, 1.0, n);

  const double ef = std::abs(If - If_c) / 15.0;
  const double ef2 = std::abs(If2 - If2_c) / 15.0;
  const double ew = std::abs(Iw - Iw_c) / 15.0;

  PoincareCheck out;
  out.lhs = If2 - If * If;
  out.rhs = 0.5 * Iw;
  // First-order propagation of the Richardson estimates through the
  // variance expression, padded with a relative floor for round-off.
  out.error_bound = ef2 + (2.0 * std::abs(If) + ef) * ef + 0.5 * ew +
                    1e-14 * (std::abs(out.lhs) + std::abs(out.rhs) + 1.0);
  out.satisfied = out.lhs <= out.rhs + out.error_bound;
  return out;
}

}  // namespace shocklab
