#include "shocklab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "shocklab/common.hpp"
#include "shocklab/quadrature.hpp"

namespace shocklab {

Grid Grid::uniform(double xi_min, double xi_max, int n_cells) {
  if (!(xi_min < xi_max) || n_cells < 8)
    throw ConfigError("grid needs xi_min < xi_max and at least 8 cells");
  Grid g;
  g.xi_min = xi_min;
  g.xi_max = xi_max;
  g.n = n_cells;
  g.h = (xi_max - xi_min) / n_cells;
  g.nodes.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i) g.nodes[i] = xi_min + i * g.h;
  return g;
}

namespace {

// van Leer harmonic-mean slope; vanishes at extrema, second order on smooth
// monotone data.
inline double limited_slope(double back, double fwd) {
  const double prod = back * fwd;
  return prod > 0.0 ? 2.0 * prod / (back + fwd) : 0.0;
}

inline double frame_flux(double u, double sigma) {
  return u * u * u - sigma * u;
}

// Interval bound on |g'| = |3u^2 - sigma| between the two interface states;
// 3u^2 is monotone in |u|, so the extrema sit at the endpoints plus u = 0
// when the interval straddles it.
inline double interface_speed(double ul, double ur, double sigma) {
  double a = std::max(std::abs(3.0 * ul * ul - sigma),
                      std::abs(3.0 * ur * ur - sigma));
  if (ul * ur < 0.0) a = std::max(a, sigma);
  return a;
}

}  // namespace

void convection_diffusion_rhs(const std::vector<double>& u, double h,
                              double sigma, double mu,
                              std::vector<double>& rhs) {
  const int n = static_cast<int>(u.size()) - 1;
  rhs.assign(u.size(), 0.0);
  if (n < 2) return;
  const double inv_h = 1.0 / h;
  const double inv_h2 = inv_h * inv_h;

  // March interfaces left to right, carrying the previous flux and the
  // limited slopes of the two cells meeting each interface.
  double slope_i = 0.0;  // boundary cell: no reconstruction
  double flux_prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double slope_ip1 =
        (i + 2 <= n)
            ? limited_slope(u[i + 1] - u[i], u[i + 2] - u[i + 1])
            : 0.0;
    const double ul = u[i] + 0.5 * slope_i;
    const double ur = u[i + 1] - 0.5 * slope_ip1;
    const double a = interface_speed(ul, ur, sigma);
    const double flux =
        0.5 * (frame_flux(ul, sigma) + frame_flux(ur, sigma)) -
        0.5 * a * (ur - ul);
    if (i >= 1)
      rhs[i] = -(flux - flux_prev) * inv_h +
               mu * (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
    flux_prev = flux;
    slope_i = slope_ip1;
  }
}

double max_wave_speed(const std::vector<double>& u, double sigma) {
  double lo = u.empty() ? 0.0 : u[0], hi = lo, speed = 0.0;
  for (double v : u) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    speed = std::max(speed, std::abs(3.0 * v * v - sigma));
  }
  if (lo < 0.0 && hi > 0.0) speed = std::max(speed, sigma);
  return speed;
}

std::vector<double> build_perturbation(const PerturbationSpec& spec,
                                       const Grid& grid,
                                       const ShockProfile& profile) {
  std::vector<double> phi(grid.nodes.size(), 0.0);
  switch (spec.kind) {
    case PerturbationSpec::Kind::none:
      break;
    case PerturbationSpec::Kind::gaussian: {
      if (!(spec.width > 0.0))
        throw ConfigError("gaussian perturbation needs a positive width");
      for (std::size_t i = 0; i < phi.size(); ++i) {
        const double z = (grid.nodes[i] - spec.center) / spec.width;
        phi[i] = spec.amplitude * std::exp(-z * z);
      }
      break;
    }
    case PerturbationSpec::Kind::profile_translate:
      for (std::size_t i = 0; i < phi.size(); ++i)
        phi[i] = profile.eval(grid.nodes[i] + spec.translate) -
                 profile.eval(grid.nodes[i]);
      break;
    case PerturbationSpec::Kind::bandlimited_noise: {
      if (spec.n_modes < 1 || !(spec.support > 0.0))
        throw ConfigError("noise perturbation needs modes >= 1 and support > 0");
      std::mt19937_64 rng(spec.seed);
      // Portable uniform in [-1, 1): top 53 bits of the generator state, so
      // identical seeds give identical fields on every platform.
      const auto uniform = [&rng]() {
        return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
      };
      std::vector<double> ac(spec.n_modes), as(spec.n_modes);
      for (int k = 0; k < spec.n_modes; ++k) {
        ac[k] = uniform();
        as[k] = uniform();
      }
      const double norm = spec.amplitude / std::sqrt(double(spec.n_modes));
      const double pi = 3.14159265358979323846;
      for (std::size_t i = 0; i < phi.size(); ++i) {
        const double xi = grid.nodes[i];
        const double window = std::exp(-(xi / spec.support) * (xi / spec.support));
        double sum = 0.0;
        for (int k = 0; k < spec.n_modes; ++k) {
          const double arg = (k + 1) * pi * xi / spec.support;
          sum += ac[k] * std::cos(arg) + as[k] * std::sin(arg);
        }
        phi[i] = norm * window * sum;
      }
      break;
    }
  }
  return phi;
}

Simulation::Simulation(const WaveParameters& params, const Grid& grid,
                       const SchemeConfig& scheme,
                       const PerturbationSpec& initial)
    : params_(params), grid_(grid), cfg_(scheme), wf_(params) {
  if (!(cfg_.cfl > 0.0 && cfg_.cfl <= 0.5))
    throw ConfigError("cfl must lie in (0, 0.5] for the explicit scheme");
  profile_ = std::make_unique<ShockProfile>(params_, 0.0, cfg_.tolerance);
  // Domain must cover the transition zone on both sides (left tail decays
  // like exp(-delta_S^2 |xi| / mu), right tail algebraically).
  const double ds2 = params_.delta_S * params_.delta_S;
  if (!(grid_.xi_min < profile_->xi_1() - 20.0 * params_.mu / ds2))
    throw ConfigError("grid xi_min does not cover the left transition zone");
  if (!(grid_.xi_max > profile_->xi_star() + 50.0 * params_.mu / ds2))
    throw ConfigError("grid xi_max does not cover the right transition zone");
  const double margin = 20.0;
  table_ = std::make_unique<ShockProfileTable>(
      *profile_, grid_.xi_min - margin, grid_.xi_max + margin,
      cfg_.table_spacing);
  rar_ = std::make_unique<ApproxRarefaction>(params_, cfg_.tolerance);
  ansatz_ = std::make_unique<CompositeAnsatz>(*table_, *rar_);
  source_ = std::make_unique<SourceTerm>(*ansatz_);

  const std::size_t m = grid_.nodes.size();
  u_.resize(m);
  phi_.resize(m);
  utilde_.resize(m);
  wslope_.resize(m);
  foot_.resize(m);
  stage_.resize(m);
  rhs_.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    foot_[i] = grid_.nodes[i] - flux_prime(params_.u_mid);

  rebuild_ansatz_row();  // fills utilde_, wslope_ at t = 0, X = 0
  const std::vector<double> phi0 = build_perturbation(initial, grid_, *profile_);
  for (std::size_t i = 0; i < m; ++i) u_[i] = utilde_[i] + phi0[i];
  phi_ = phi0;

  std::vector<double> work(m);
  for (std::size_t i = 0; i < m; ++i) work[i] = phi0[i] * phi0[i];
  double h1 = trapezoid(work, grid_.h);
  for (std::size_t i = 0; i < m; ++i) {
    double d;
    if (i == 0)
      d = (phi0[1] - phi0[0]) / grid_.h;
    else if (i + 1 == m)
      d = (phi0[m - 1] - phi0[m - 2]) / grid_.h;
    else
      d = (phi0[i + 1] - phi0[i - 1]) / (2.0 * grid_.h);
    work[i] = d * d;
  }
  initial_h1_ = std::sqrt(h1 + trapezoid(work, grid_.h));

  bdata_min_ = std::min(u_.front(), u_.back());
  bdata_max_ = std::max(u_.front(), u_.back());

  shift_.X = 0.0;
  shift_.Xdot = shift_rhs_from_row(phi_, wslope_, grid_.h, params_.u_mid);
  shift_.history.push_back({0.0, 0.0, shift_.Xdot});
}

void Simulation::rebuild_ansatz_row() {
  const bool pure_shock = params_.delta_R == 0.0;
  const double t_r = 1.0 + t_;
  const double x_off = params_.sigma * t_ + shift_.X;
  for (std::size_t i = 0; i < grid_.nodes.size(); ++i) {
    const double y = grid_.nodes[i] + shift_.X;
    const double us = table_->eval(y);
    const double dus = table_->eval_deriv(y);
    double value = us;
    if (!pure_shock) {
      const ApproxRarefaction::Jet r =
          rar_->eval_jet(t_r, grid_.nodes[i] + x_off, foot_[i]);
      foot_[i] = r.x0;
      value += r.u - params_.u_mid;
    }
    utilde_[i] = value;
    wslope_[i] = wf_.eval(us) * dus;
    phi_[i] = u_[i] - value;
  }
}

double Simulation::boundary_value(double t, double xi, double X) const {
  return ansatz_->eval(t, xi, X).value;
}

void Simulation::check_finite() const {
  for (double v : u_) {
    if (!std::isfinite(v) || std::abs(v) > cfg_.blow_up_threshold)
      throw NumericalError(NumericalError::Kind::blow_up,
                           "field left the admissible range at t = " +
                               std::to_string(t_));
  }
}

void Simulation::step() {
  const double speed = max_wave_speed(u_, params_.sigma);
  const double convective =
      speed > 0.0 ? grid_.h / speed : std::numeric_limits<double>::infinity();
  const double diffusive = grid_.h * grid_.h / (2.0 * params_.mu);
  double dt = cfg_.cfl * std::min(convective, diffusive);
  if (cfg_.t_end > t_) dt = std::min(dt, cfg_.t_end - t_);
  step_by(dt);
}

void Simulation::step_by(double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const std::size_t m = u_.size();
  const double t_new = t_ + dt;

  convection_diffusion_rhs(u_, grid_.h, params_.sigma, params_.mu, rhs_);
  for (std::size_t i = 0; i < m; ++i) stage_[i] = u_[i] + dt * rhs_[i];
  stage_.front() = boundary_value(t_new, grid_.xi_min, shift_.X);
  stage_.back() = boundary_value(t_new, grid_.xi_max, shift_.X);

  convection_diffusion_rhs(stage_, grid_.h, params_.sigma, params_.mu, rhs_);
  for (std::size_t i = 0; i < m; ++i)
    u_[i] = 0.5 * (u_[i] + stage_[i] + dt * rhs_[i]);
  u_.front() = boundary_value(t_new, grid_.xi_min, shift_.X);
  u_.back() = boundary_value(t_new, grid_.xi_max, shift_.X);
  bdata_min_ = std::min({bdata_min_, u_.front(), u_.back()});
  bdata_max_ = std::max({bdata_max_, u_.front(), u_.back()});

  // Shift rule: rate from the pre-step perturbation, then explicit Euler.
  const double Xdot = shift_rhs_from_row(phi_, wslope_, grid_.h, params_.u_mid);
  advance_shift(shift_, t_new, Xdot, dt);
  t_ = t_new;

  const double mass = table_->eval(grid_.xi_max + shift_.X) -
                      table_->eval(grid_.xi_min + shift_.X);
  if (!(mass >= 0.99 * params_.delta_S))
    throw NumericalError(NumericalError::Kind::coverage,
                         "shifted profile no longer covered by the grid at t = " +
                             std::to_string(t_));

  rebuild_ansatz_row();
  check_finite();
  dt_last_ = dt;
}

void Simulation::run(const std::function<void(const Simulation&)>& on_sample) {
  if (!(cfg_.t_end > t_))
    throw ConfigError("end time must exceed the current time");
  if (!(cfg_.output_dt > 0.0))
    throw ConfigError("output cadence must be positive");
  if (on_sample) on_sample(*this);
  double next_sample = t_ + cfg_.output_dt;
  const double horizon = cfg_.t_end * (1.0 - 1e-12);
  while (t_ < horizon) {
    step();
    if (on_sample && (t_ >= next_sample || t_ >= horizon)) {
      on_sample(*this);
      next_sample =
          (std::floor(t_ / cfg_.output_dt) + 1.0) * cfg_.output_dt;
    }
  }
}

double Simulation::phi_sup_norm() const {
  double m = 0.0;
  for (double v : phi_) m = std::max(m, std::abs(v));
  return m;
}

double Simulation::phi_h1_norm() const {
  const std::size_t m = phi_.size();
  std::vector<double> work(m);
  for (std::size_t i = 0; i < m; ++i) work[i] = phi_[i] * phi_[i];
  double acc = trapezoid(work, grid_.h);
  for (std::size_t i = 0; i < m; ++i) {
    double d;
    if (i == 0)
      d = (phi_[1] - phi_[0]) / grid_.h;
    else if (i + 1 == m)
      d = (phi_[m - 1] - phi_[m - 2]) / grid_.h;
    else
      d = (phi_[i + 1] - phi_[i - 1]) / (2.0 * grid_.h);
    work[i] = d * d;
  }
  return std::sqrt(acc + trapezoid(work, grid_.h));
}

}  // namespace shocklab
