#include "shocklab/waves.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/common.hpp"
#include "shocklab/quadrature.hpp"

namespace shocklab {

WaveParameters WaveParameters::composite(double u_minus, double u_plus,
                                         double mu) {
  if (!(u_minus < 0.0))
    throw ConfigError("u_minus must be negative for the composite wave");
  if (!(mu > 0.0)) throw ConfigError("viscosity mu must be positive");
  WaveParameters p;
  p.u_minus = u_minus;
  p.u_mid = -0.5 * u_minus;
  p.u_star = 0.5 * p.u_mid;
  if (!(u_plus >= p.u_mid))
    throw ConfigError(
        "u_plus must be at least -u_minus/2 so the shock stays degenerate");
  p.u_plus = u_plus;
  p.sigma = flux_prime(p.u_mid);
  p.delta_S = p.u_mid - p.u_minus;
  p.delta_R = p.u_plus - p.u_mid;
  p.mu = mu;
  return p;
}

WavePattern classify_riemann(double u_minus, double u_plus) {
  if (u_minus == u_plus)
    throw ConfigError("Riemann classification needs distinct states");
  // The flux is odd, so decreasing data mirrors onto increasing data under
  // u -> -u, x -> -x; the pattern tags are invariant under the mirror.
  if (u_minus > u_plus) return classify_riemann(-u_minus, -u_plus);
  // Increasing data. On u >= 0 the flux is convex, so the solution is a fan.
  if (u_minus >= 0.0) return WavePattern::rarefaction;
  // With u_minus < 0 the convex envelope over [u_minus, u_plus] is the chord
  // from u_minus tangent to the flux at -u_minus/2, continued along the flux:
  // a single Oleinik shock up to min(u_plus, -u_minus/2), then a fan.
  const double tangent = -0.5 * u_minus;
  if (u_plus < tangent) return WavePattern::shock;
  if (u_plus == tangent) return WavePattern::degenerate_shock;
  return WavePattern::shock_plus_rarefaction;
}

std::string to_string(WavePattern p) {
  switch (p) {
    case WavePattern::shock: return "shock";
    case WavePattern::degenerate_shock: return "degenerate_shock";
    case WavePattern::rarefaction: return "rarefaction";
    case WavePattern::shock_plus_rarefaction: return "shock_plus_rarefaction";
  }
  return "unknown";
}

namespace {

// Root of s + exp(s) = r. The left-hand side is increasing and convex, so
// Newton lands right of the root after one step and then converges
// monotonically from any start.
double solve_s_plus_exp(double r, double tol) {
  double s;
  if (r > 1.0) {
    s = std::log(r);
  } else if (r < -1.0) {
    s = r;
  } else {
    s = 0.5 * (r - 1.0);
  }
  for (int it = 0; it < 200; ++it) {
    const double es = std::exp(std::min(s, 700.0));
    const double residual = s + es - r;
    const double step = residual / (1.0 + es);
    s -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(s)) ||
        std::abs(residual) <= tol * (1.0 + std::abs(r)))
      return s;
  }
  throw NumericalError(NumericalError::Kind::root_find,
                       "profile inversion did not converge");
}

}  // namespace

ShockProfile::ShockProfile(const WaveParameters& params, double u_at_origin,
                           double tolerance)
    : params_(params), tol_(tolerance) {
  if (!(params_.mu > 0.0)) throw ConfigError("viscosity mu must be positive");
  if (!(params_.u_minus < u_at_origin && u_at_origin < params_.u_mid))
    throw ConfigError(
        "profile normalization value must lie strictly between u_minus and "
        "u_mid");
  if (!(tol_ > 0.0)) throw ConfigError("root tolerance must be positive");
  g_origin_ = implicit_lhs(u_at_origin);
  xi_1_ = xi_of_state(0.0);
  xi_star_ = xi_of_state(params_.u_star);
}

double ShockProfile::implicit_lhs(double u) const {
  const double a = params_.u_minus, b = params_.u_mid;
  if (!(a < u && u < b))
    throw NumericalError(NumericalError::Kind::root_find,
                         "profile state outside (u_minus, u_mid)");
  const double d = b - a;
  return std::log((u - a) / (b - u)) / (d * d) + 1.0 / (d * (b - u));
}

double ShockProfile::invert(double rhs) const {
  // Substituting u = u_minus + d/(1 + e^{-s}) collapses the implicit relation
  // to (s + 1 + e^s)/d^2 = rhs, solvable to machine accuracy for any s.
  const double a = params_.u_minus, b = params_.u_mid;
  const double d = b - a;
  const double s = solve_s_plus_exp(d * d * rhs - 1.0, tol_);
  if (s >= 0.0) return b - d / (1.0 + std::exp(s));
  const double es = std::exp(s);
  return a + d * es / (1.0 + es);
}

double ShockProfile::eval(double xi) const {
  return invert(xi / params_.mu + g_origin_);
}

double ShockProfile::eval_deriv(double xi) const {
  const double a = params_.u_minus, b = params_.u_mid;
  const double d = b - a;
  const double s =
      solve_s_plus_exp(d * d * (xi / params_.mu + g_origin_) - 1.0, tol_);
  // Both gaps from the sigmoid directly; each stays fully accurate on its
  // own side, where the complementary gap is order d.
  double gap_left, gap_right;
  if (s >= 0.0) {
    gap_right = d / (1.0 + std::exp(s));
    gap_left = d - gap_right;
  } else {
    const double es = std::exp(s);
    gap_left = d * es / (1.0 + es);
    gap_right = d - gap_left;
  }
  return gap_left * gap_right * gap_right / params_.mu;
}

double ShockProfile::log_left_gap(double xi) const {
  const double d = params_.u_mid - params_.u_minus;
  const double s =
      solve_s_plus_exp(d * d * (xi / params_.mu + g_origin_) - 1.0, tol_);
  const double log_sigmoid =
      s <= 0.0 ? s - std::log1p(std::exp(s)) : -std::log1p(std::exp(-s));
  return std::log(d) + log_sigmoid;
}

double ShockProfile::xi_of_state(double u) const {
  return params_.mu * (implicit_lhs(u) - g_origin_);
}

ShockProfileTable::ShockProfileTable(const ShockProfile& profile,
                                     double xi_min, double xi_max,
                                     double spacing)
    : profile_(&profile), params_(profile.params()), xi_min_(xi_min) {
  if (!(spacing > 0.0) || !(xi_min < xi_max))
    throw ConfigError("profile table needs xi_min < xi_max and spacing > 0");
  const int n = std::max(2, static_cast<int>(std::ceil((xi_max - xi_min) / spacing)));
  h_ = (xi_max - xi_min) / n;
  inv_h_ = 1.0 / h_;
  u_.resize(n + 1);
  du_.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double xi = xi_min_ + i * h_;
    u_[i] = profile.eval(xi);
    du_[i] = profile.eval_deriv(xi);
  }
}

double ShockProfileTable::eval(double xi) const {
  const double xi_max = xi_min_ + h_ * (static_cast<double>(u_.size()) - 1.0);
  if (xi < xi_min_ || xi > xi_max) return profile_->eval(xi);
  const int last = static_cast<int>(u_.size()) - 2;
  const int j = std::clamp(static_cast<int>((xi - xi_min_) * inv_h_), 0, last);
  const double t = (xi - (xi_min_ + j * h_)) * inv_h_;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * u_[j] + h_ * h10 * du_[j] + h01 * u_[j + 1] +
         h_ * h11 * du_[j + 1];
}

double ShockProfileTable::eval_deriv(double xi) const {
  const double u = eval(xi);
  const double ga = u - params_.u_minus, gb = u - params_.u_mid;
  return ga * gb * gb / params_.mu;
}

TailFit shock_tail_bounds(const ShockProfile& profile, ProfileSide side,
                          double xi_lo, double xi_hi, int n_samples) {
  if (!(xi_lo < xi_hi) || n_samples < 3)
    throw ConfigError("tail fit window must be ordered with >= 3 samples");
  if (side == ProfileSide::right && !(xi_lo > 0.0))
    throw ConfigError("right-tail fit needs a positive window");
  const WaveParameters& p = profile.params();
  std::vector<double> xs(n_samples), ys(n_samples);
  double curvature = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double xi = xi_lo + (xi_hi - xi_lo) * i / (n_samples - 1);
    const double u = profile.eval(xi);
    if (side == ProfileSide::left) {
      xs[i] = xi;
      ys[i] = profile.log_left_gap(xi);
    } else {
      const double gap = p.u_mid - u;
      if (!(gap > 0.0))
        throw NumericalError(NumericalError::Kind::fit_quality,
                             "right-tail gap vanished inside the fit window");
      xs[i] = std::log(xi);
      ys[i] = std::log(gap);
    }
    // |U''| / |U'| = |(U - u_mid)(3U - 2 u_minus - u_mid)| / mu, from
    // differentiating the profile ODE once.
    curvature = std::max(
        curvature, std::abs((u - p.u_mid) * (3.0 * u - 2.0 * p.u_minus - p.u_mid)) / p.mu);
  }
  const LineFit fit = fit_line(xs, ys);
  if (!(fit.r2 >= 0.98))
    throw NumericalError(NumericalError::Kind::fit_quality,
                         "tail fit r2 = " + std::to_string(fit.r2) +
                             " is below 0.98; widen the window");
  TailFit out;
  out.law = side == ProfileSide::left ? TailFit::Law::exponential
                                      : TailFit::Law::algebraic;
  out.rate_or_order = side == ProfileSide::left ? fit.slope : -fit.slope;
  out.r2 = fit.r2;
  out.curvature_ratio = curvature;
  return out;
}

ApproxRarefaction::ApproxRarefaction(const WaveParameters& params,
                                     double tolerance)
    : params_(params), tol_(tolerance) {
  if (!(tol_ > 0.0)) throw ConfigError("root tolerance must be positive");
  if (!(params_.u_plus >= params_.u_mid) || !(params_.u_mid > 0.0))
    throw ConfigError("rarefaction needs 0 < u_mid <= u_plus");
  const double wm = flux_prime(params_.u_mid);
  const double wp = flux_prime(params_.u_plus);
  w_mean_ = 0.5 * (wp + wm);
  w_half_ = 0.5 * (wp - wm);
}

double ApproxRarefaction::kernel0(double x0) const {
  return w_mean_ + w_half_ * std::tanh(x0);
}

double ApproxRarefaction::kernel0_d1(double x0) const {
  const double th = std::tanh(x0);
  return w_half_ * (1.0 - th * th);
}

double ApproxRarefaction::kernel0_d2(double x0) const {
  const double th = std::tanh(x0);
  return -2.0 * th * w_half_ * (1.0 - th * th);
}

double ApproxRarefaction::foot_point(double t, double x) const {
  return foot_point(t, x, x - w_mean_ * t);
}

double ApproxRarefaction::foot_point(double t, double x, double guess) const {
  if (!(t >= 0.0))
    throw ConfigError("rarefaction time must be nonnegative");
  if (w_half_ == 0.0) return x - w_mean_ * t;
  // Characteristics x0 + w0(x0) t are strictly increasing in x0, so the foot
  // point is bracketed by assuming the fastest / slowest speeds.
  double lo = x - (w_mean_ + w_half_) * t;
  double hi = x - (w_mean_ - w_half_) * t;
  if (lo >= saturation_width) return lo;    // w0 == w_plus exactly there
  if (hi <= -saturation_width) return hi;   // w0 == w_minus exactly there
  double x0 = std::clamp(guess, lo, hi);
  // g is assembled from terms as large as |x| + w0 t, so it carries
  // round-off noise at that scale; iterating past it only jitters.
  const double g_noise = 4.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(x) + (w_mean_ + w_half_) * t + 1.0);
  double prev_width = hi - lo;
  for (int it = 0; it < 200; ++it) {
    const double g = x0 + kernel0(x0) * t - x;
    if (std::abs(g) <= g_noise) return x0;
    if (g > 0.0)
      hi = x0;
    else
      lo = x0;
    const double gp = 1.0 + kernel0_d1(x0) * t;
    double next = x0 - g / gp;
    // Bisect when Newton leaves the bracket, or when two consecutive accepted
    // steps failed to halve it: Newton can 2-cycle between the flat and steep
    // ends of the bracket while barely shrinking it.
    const bool stalled = (it % 2 == 1) && hi - lo > 0.5 * prev_width;
    if (!(next > lo && next < hi) || stalled) next = 0.5 * (lo + hi);
    if (it % 2 == 1) prev_width = hi - lo;
    const double moved = std::abs(next - x0);
    x0 = next;
    if (moved <= tol_ * (1.0 + std::abs(x0))) return x0;
  }
  throw NumericalError(NumericalError::Kind::root_find,
                       "rarefaction foot point did not converge");
}

ApproxRarefaction::Jet ApproxRarefaction::eval_jet(double t, double x) const {
  return eval_jet(t, x, x - w_mean_ * t);
}

ApproxRarefaction::Jet ApproxRarefaction::eval_jet(double t, double x,
                                                   double foot_guess) const {
  if (w_half_ == 0.0)
    return {params_.u_mid, 0.0, 0.0, x - w_mean_ * t};
  const double x0 = foot_point(t, x, foot_guess);
  const double w = kernel0(x0);
  const double k1 = kernel0_d1(x0);
  const double k2 = kernel0_d2(x0);
  const double jac = 1.0 + k1 * t;
  const double w_x = k1 / jac;
  const double w_xx = k2 / (jac * jac * jac);
  const double u = std::sqrt(w / 3.0);
  const double u_x = w_x / (6.0 * u);
  const double u_xx = w_xx / (6.0 * u) - u_x * u_x / u;
  return {u, u_x, u_xx, x0};
}

double ExactRarefaction::eval(double t, double x) const {
  if (!(t > 0.0)) throw ConfigError("the inviscid fan needs t > 0");
  const double speed = x / t;
  if (speed <= params_.lambda_minus()) return params_.u_mid;
  if (speed >= params_.lambda_plus()) return params_.u_plus;
  return std::sqrt(speed / 3.0);
}

namespace {

struct NormPair {
  double ux;
  double uxx;
};

// L^p norms (p <= 0 meaning sup) of u^R_x and u^R_xx at one time, using the
// foot point as integration variable: dx = (1 + w0'(x0) t) dx0 maps the
// spreading wave onto the fixed interval where tanh has not saturated.
NormPair rarefaction_norms(const ApproxRarefaction& r, double t, double p) {
  const double width = ApproxRarefaction::saturation_width + 1.0;
  const int n = 4000;
  const double h = 2.0 * width / n;
  if (p <= 0.0) {
    double mx = 0.0, mxx = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x0 = -width + i * h;
      const double x = x0 + r.kernel0(x0) * t;
      const ApproxRarefaction::Jet jet = r.eval_jet(t, x, x0);
      mx = std::max(mx, std::abs(jet.u_x));
      mxx = std::max(mxx, std::abs(jet.u_xx));
    }
    return {mx, mxx};
  }
  std::vector<double> fx(n + 1), fxx(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x0 = -width + i * h;
    const double x = x0 + r.kernel0(x0) * t;
    const ApproxRarefaction::Jet jet = r.eval_jet(t, x, x0);
    const double jac = 1.0 + r.kernel0_d1(x0) * t;
    fx[i] = std::pow(std::abs(jet.u_x), p) * jac;
    fxx[i] = std::pow(std::abs(jet.u_xx), p) * jac;
  }
  return {std::pow(trapezoid(fx, h), 1.0 / p),
          std::pow(trapezoid(fxx, h), 1.0 / p)};
}

}  // namespace

DecayReport rarefaction_decay_report(const ApproxRarefaction& r,
                                     const std::vector<double>& times,
                                     const std::vector<double>& p_values) {
  if (times.empty() || p_values.empty())
    throw ConfigError("decay report needs nonempty times and exponents");
  for (double t : times)
    if (!(t >= 1.0)) throw ConfigError("decay report times must be >= 1");
  DecayReport report;
  report.times = times;
  std::vector<double> shifted(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) shifted[i] = 1.0 + times[i];
  for (double p : p_values) {
    DecayReport::Series s;
    s.p = p;
    for (double t : times) {
      const NormPair norms = rarefaction_norms(r, t, p);
      s.ux_norm.push_back(norms.ux);
      s.uxx_norm.push_back(norms.uxx);
    }
    // The claimed laws are powers of 1 + t, so fit against that abscissa.
    s.ux_fit = fit_power_law(shifted, s.ux_norm);
    s.uxx_fit = fit_power_law(shifted, s.uxx_norm);
    report.series.push_back(std::move(s));
  }
  return report;
}

}  // namespace shocklab
