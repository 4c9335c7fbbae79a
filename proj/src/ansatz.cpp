#include "shocklab/ansatz.hpp"

#include <cmath>

#include "shocklab/common.hpp"
#include "shocklab/quadrature.hpp"
#include "shocklab/solver.hpp"

namespace shocklab {

CompositeAnsatz::CompositeAnsatz(const ShockProfileTable& shock,
                                 const ApproxRarefaction& rar)
    : shock_(&shock), rar_(&rar), params_(shock.params()) {}

CompositeAnsatz::Jet CompositeAnsatz::eval(double t, double xi,
                                           double X) const {
  double foot = xi + params_.sigma * t + X - flux_prime(params_.u_mid) * (1.0 + t);
  return eval(t, xi, X, &foot);
}

CompositeAnsatz::Jet CompositeAnsatz::eval(double t, double xi, double X,
                                           double* foot_inout) const {
  const double y = xi + X;
  const double us = shock_->eval(y);
  const double dus = shock_->eval_deriv(y);
  // U'' by differentiating the profile ODE once.
  const double ga = us - params_.u_minus, gb = us - params_.u_mid;
  const double d2us = dus * (gb * gb + 2.0 * ga * gb) / params_.mu;
  if (params_.delta_R == 0.0) return {us, dus, d2us};
  const ApproxRarefaction::Jet r =
      rar_->eval_jet(1.0 + t, xi + params_.sigma * t + X, *foot_inout);
  *foot_inout = r.x0;
  return {us + r.u - params_.u_mid, dus + r.u_x, d2us + r.u_xx};
}

SourceTerm::Value SourceTerm::eval(double t, double xi, double X) const {
  const WaveParameters& p = ansatz_->params();
  if (p.delta_R == 0.0) return {0.0, 0.0, 0.0};
  const double us = ansatz_->shock().eval(xi + X);
  const double dus = ansatz_->shock().eval_deriv(xi + X);
  const ApproxRarefaction::Jet r =
      ansatz_->rarefaction().eval_jet(1.0 + t, xi + p.sigma * t + X);
  const double ut = us + r.u - p.u_mid;
  // The xi-derivative of f(utilde) - f(u^R) - f(u^S) expands exactly into
  // flux-slope differences because utilde_xi = u^S_xi + u^R_xi.
  const double F1 = (flux_prime(ut) - flux_prime(us)) * dus +
                    (flux_prime(ut) - flux_prime(r.u)) * r.u_x;
  const double F2 = -p.mu * r.u_xx;
  return {F1 + F2, F1, F2};
}

double shift_rhs(const std::vector<double>& phi, const ShockProfileTable& shock,
                 const WeightFunction& wf, double X, const Grid& grid) {
  if (phi.size() != grid.nodes.size())
    throw ConfigError("phi row does not match the grid");
  const WaveParameters& p = shock.params();
  const double mass =
      shock.eval(grid.xi_max + X) - shock.eval(grid.xi_min + X);
  if (!(mass >= 0.99 * p.delta_S))
    throw NumericalError(
        NumericalError::Kind::coverage,
        "grid captures less than 99% of the shock transition; enlarge the "
        "domain or reduce the shift");
  std::vector<double> integrand(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double y = grid.nodes[i] + X;
    integrand[i] = phi[i] * wf.eval(shock.eval(y)) * shock.eval_deriv(y);
  }
  const double um = p.u_mid;
  return 32.0 / (25.0 * um * um) * trapezoid(integrand, grid.h);
}

double shift_rhs_from_row(const std::vector<double>& phi,
                          const std::vector<double>& weight_slope_row, double h,
                          double u_mid) {
  if (phi.size() != weight_slope_row.size())
    throw ConfigError("phi row does not match the weight-slope row");
  std::vector<double> integrand(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    integrand[i] = phi[i] * weight_slope_row[i];
  return 32.0 / (25.0 * u_mid * u_mid) * trapezoid(integrand, h);
}

void advance_shift(ShiftState& state, double t_new, double Xdot, double dt) {
  state.X += dt * Xdot;
  state.Xdot = Xdot;
  state.history.push_back({t_new, state.X, state.Xdot});
}

}  // namespace shocklab
