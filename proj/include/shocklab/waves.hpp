#ifndef SHOCKLAB_WAVES_HPP
#define SHOCKLAB_WAVES_HPP

#include <string>
#include <vector>

#include "shocklab/fitting.hpp"

namespace shocklab {

// Flux of the scalar conservation law u_t + f(u)_x = mu u_xx and its
// derivatives. The cubic is the only flux in scope.
inline double flux(double u) { return u * u * u; }
inline double flux_prime(double u) { return 3.0 * u * u; }

// Parameter pack for the composite wave: a degenerate (sonic) Oleinik shock
// from u_minus up to u_mid = -u_minus/2 traveling at sigma = 3*u_mid^2,
// followed by a rarefaction from u_mid to u_plus. delta_R = 0 (u_plus ==
// u_mid) selects the pure-shock configuration.
struct WaveParameters {
  double u_minus = 0.0;  // left far field, < 0
  double u_plus = 0.0;   // right far field, >= u_mid
  double u_mid = 0.0;    // intermediate state -u_minus/2
  double u_star = 0.0;   // u_mid/2, right edge of the weight's active zone
  double sigma = 0.0;    // shock speed, = characteristic speed at u_mid
  double delta_S = 0.0;  // shock strength u_mid - u_minus = (3/2)|u_minus|
  double delta_R = 0.0;  // rarefaction strength u_plus - u_mid
  double mu = 0.0;       // viscosity > 0

  double lambda_minus() const { return flux_prime(u_mid); }
  double lambda_plus() const { return flux_prime(u_plus); }

  // Builds and validates the composite configuration u_minus < 0 < u_mid <=
  // u_plus. Throws ConfigError on violation.
  static WaveParameters composite(double u_minus, double u_plus, double mu);
};

// Structure of the inviscid Riemann solution for the cubic flux, from the
// convex/concave envelope construction. The shock is degenerate (sonic,
// sigma = f'(u_plus-side state)) exactly when the chord from u_minus is
// tangent to the flux, i.e. the shock's right state equals -u_minus/2.
enum class WavePattern { shock, degenerate_shock, rarefaction, shock_plus_rarefaction };

WavePattern classify_riemann(double u_minus, double u_plus);
std::string to_string(WavePattern p);

// Degenerate viscous shock profile U solving mu U' = (U - u_minus)(U - u_mid)^2
// with U(-inf) = u_minus, U(+inf) = u_mid, normalized so that U(0) equals a
// prescribed value (default 0). Evaluation inverts the implicit
// partial-fraction integral
//   G(U) = [ln((U-u_minus)/(u_mid-U))]/d^2 + 1/(d (u_mid-U)) = xi/mu + G(U(0)),
//   d = u_mid - u_minus,
// which is strictly increasing in U, by bracketed Newton with bisection
// fallback; the extreme tails use log/reciprocal substitutions so both the
// exponentially small left gap and the algebraically small right gap keep full
// relative accuracy.
class ShockProfile {
public:
  ShockProfile(const WaveParameters& params, double u_at_origin,
               double tolerance);

  double eval(double xi) const;        // U(xi)
  double eval_deriv(double xi) const;  // U'(xi) through the profile ODE
  // ln(U(xi) - u_minus); stays finite long after the gap itself underflows.
  double log_left_gap(double xi) const;

  // xi at which U attains a given state value in (u_minus, u_mid).
  double xi_of_state(double u) const;

  double xi_1() const { return xi_1_; }        // U(xi_1) = 0
  double xi_star() const { return xi_star_; }  // U(xi_star) = u_mid/2
  const WaveParameters& params() const { return params_; }
  double tolerance() const { return tol_; }

private:
  double implicit_lhs(double u) const;  // G(u)
  double invert(double rhs) const;      // solve G(U) = rhs for U

  WaveParameters params_;
  double tol_;
  double g_origin_;  // G(U(0))
  double xi_1_;
  double xi_star_;
};

// Tabulated profile for hot loops: cubic Hermite interpolation on a uniform
// xi table with exact nodal derivatives from the ODE, falling back to the
// exact inversion outside the table. Accuracy (vs ShockProfile::eval) is
// bounded by spacing^4/384 * max|U''''|, far below solver truncation error.
class ShockProfileTable {
public:
  ShockProfileTable(const ShockProfile& profile, double xi_min, double xi_max,
                    double spacing);

  double eval(double xi) const;
  double eval_deriv(double xi) const;  // through the ODE at the interpolated U
  const WaveParameters& params() const { return params_; }
  const ShockProfile& profile() const { return *profile_; }

private:
  const ShockProfile* profile_;
  WaveParameters params_;
  double xi_min_, inv_h_, h_;
  std::vector<double> u_, du_;  // nodal U and U'
};

// Fitted tail law of the shock profile.
struct TailFit {
  enum class Law { exponential, algebraic };
  Law law;
  double rate_or_order;   // exponential rate r in e^{-r|xi|}, or algebraic order p
  double r2;              // fit quality of the log-linear regression
  double curvature_ratio; // sup |U''| / |U'| over the sampled window
};

enum class ProfileSide { left, right };

// Log-linear fit of the tail gap over [xi_lo, xi_hi] with n samples:
// ln(U - u_minus) vs xi on the left, ln(u_mid - U) vs ln xi on the right.
// Throws fit_quality when r2 < 0.98 (no conclusions from bad fits).
TailFit shock_tail_bounds(const ShockProfile& profile, ProfileSide side,
                          double xi_lo, double xi_hi, int n_samples = 200);

// Smooth approximate rarefaction from Burgers characteristics: the speed
// field w solves w_t + w w_x = 0 with data
//   w0(x) = (wp + wm)/2 + (wp - wm)/2 * tanh(x),  wm = 3 u_mid^2, wp = 3 u_plus^2,
// evaluated by solving the fixed point x = x0 + w0(x0) t (strictly monotone in
// x0) with safeguarded Newton; the state is u = sqrt(w/3), the positive branch
// of the characteristic speed 3u^2 = w.
class ApproxRarefaction {
public:
  ApproxRarefaction(const WaveParameters& params, double tolerance);

  struct Jet {
    double u;
    double u_x;
    double u_xx;
    double x0;  // characteristic foot point
  };

  // Foot point x0(t,x); `guess` warm-starts the Newton iteration (pass the
  // previous foot point when sweeping a grid or stepping in time).
  double foot_point(double t, double x) const;
  double foot_point(double t, double x, double guess) const;

  Jet eval_jet(double t, double x) const;
  Jet eval_jet(double t, double x, double foot_guess) const;
  double eval(double t, double x) const { return eval_jet(t, x).u; }
  double eval_x(double t, double x) const { return eval_jet(t, x).u_x; }
  double eval_xx(double t, double x) const { return eval_jet(t, x).u_xx; }

  // Burgers kernel and derivatives.
  double kernel0(double x0) const;
  double kernel0_d1(double x0) const;
  double kernel0_d2(double x0) const;

  const WaveParameters& params() const { return params_; }
  double tolerance() const { return tol_; }
  // |x0| beyond which tanh saturates to +-1 in double precision and the wave
  // equals its far field to machine accuracy.
  static constexpr double saturation_width = 40.0;

private:
  WaveParameters params_;
  double tol_;
  double w_mean_, w_half_;  // (wp+wm)/2, (wp-wm)/2
};

// Self-similar inviscid fan: u_mid left of the fan, u_plus right of it,
// sqrt((x/t)/3) inside. Requires t > 0.
class ExactRarefaction {
public:
  explicit ExactRarefaction(const WaveParameters& params) : params_(params) {}
  double eval(double t, double x) const;
  const WaveParameters& params() const { return params_; }

private:
  WaveParameters params_;
};

// L^p norms of u^R_x and u^R_xx at a list of times, with log-log fitted decay
// exponents. p = inf is encoded as p <= 0. Norms are computed by substituting
// the foot point as integration variable, which maps the t-dependent support
// onto a fixed interval where the integrand is smooth.
struct DecayReport {
  struct Series {
    double p;                    // exponent; <= 0 means sup norm
    std::vector<double> ux_norm;
    std::vector<double> uxx_norm;
    LineFit ux_fit;
    LineFit uxx_fit;
  };
  std::vector<double> times;
  std::vector<Series> series;
};

DecayReport rarefaction_decay_report(const ApproxRarefaction& r,
                                     const std::vector<double>& times,
                                     const std::vector<double>& p_values);

}  // namespace shocklab

#endif
