#ifndef SHOCKLAB_SOLVER_HPP
#define SHOCKLAB_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "shocklab/ansatz.hpp"
#include "shocklab/waves.hpp"
#include "shocklab/weight.hpp"

namespace shocklab {

// Uniform node-centered grid with n cells (n+1 nodes).
struct Grid {
  double xi_min = 0.0;
  double xi_max = 0.0;
  int n = 0;
  double h = 0.0;
  std::vector<double> nodes;

  static Grid uniform(double xi_min, double xi_max, int n_cells);
};

// Explicit-scheme settings. dt is recomputed every step as
//   cfl * min(h / max|f'(u) - sigma|, h^2 / (2 mu)).
struct SchemeConfig {
  double cfl = 0.4;
  double t_end = 100.0;
  double output_dt = 0.5;       // diagnostic sampling cadence
  double tolerance = 1e-12;     // root-finder tolerance for wave evaluators
  double table_spacing = 5e-3;  // profile interpolation table resolution
  double blow_up_threshold = 8.0;  // |u| beyond this aborts as blow-up
};

// Supported initial perturbations phi_0; the initial condition is
// u0 = utilde^0(0, xi) + phi_0(xi).
struct PerturbationSpec {
  enum class Kind { none, gaussian, profile_translate, bandlimited_noise };
  Kind kind = Kind::none;
  double amplitude = 0.0;  // gaussian / noise amplitude
  double center = 0.0;     // gaussian center
  double width = 1.0;      // gaussian width
  double translate = 0.0;  // profile_translate: u0 = U(xi + translate)
  int n_modes = 8;         // noise: number of Fourier modes
  double support = 20.0;   // noise: half-width of the windowed band
  std::uint64_t seed = 0;  // noise RNG seed
};

// Semi-discrete convection-diffusion right-hand side for the shock-frame law
//   u_t = -(f(u) - sigma u)_xi + mu u_xixi
// on interior nodes: conservative differencing of a Rusanov (local
// Lax-Friedrichs) flux on van-Leer-limited MUSCL interface states, plus
// second-order central diffusion. rhs at the two boundary nodes is left 0;
// Dirichlet values are the caller's business.
void convection_diffusion_rhs(const std::vector<double>& u, double h,
                              double sigma, double mu,
                              std::vector<double>& rhs);

// max |f'(u) - sigma| over the field (CFL speed).
double max_wave_speed(const std::vector<double>& u, double sigma);

// Coupled integration of the shock-frame PDE and the shift rule. The PDE is
// advanced with Heun's method (strong-stability-preserving RK2); u is the
// evolved unknown and phi = u - utilde^X is derived after every step. Each
// step: (1) Heun update of u with boundary nodes pinned to the ansatz far
// field, (2) Xdot from the current phi, (3) explicit Euler update of X,
// (4) rebuild of the ansatz row and phi at the new time and shift.
class Simulation {
public:
  Simulation(const WaveParameters& params, const Grid& grid,
             const SchemeConfig& scheme, const PerturbationSpec& initial);

  void step();           // stable dt from the CFL rule
  void step_by(double dt);  // caller-chosen dt (refinement studies)

  // Advances to cfg.t_end, invoking on_sample at t = 0, every output_dt of
  // simulated time, and at the end time. Throws on blow-up.
  void run(const std::function<void(const Simulation&)>& on_sample = {});

  double t() const { return t_; }
  double dt_last() const { return dt_last_; }
  const Grid& grid() const { return grid_; }
  const WaveParameters& params() const { return params_; }
  const std::vector<double>& u() const { return u_; }
  const std::vector<double>& phi() const { return phi_; }
  // Row of utilde^X(t, xi_i) matching the current state.
  const std::vector<double>& ansatz_row() const { return utilde_; }
  // Row of w(U(xi_i + X)) U'(xi_i + X) matching the current state.
  const std::vector<double>& weight_slope_row() const { return wslope_; }
  const ShiftState& shift() const { return shift_; }

  const ShockProfile& profile() const { return *profile_; }
  const ShockProfileTable& profile_table() const { return *table_; }
  const ApproxRarefaction& rarefaction() const { return *rar_; }
  const WeightFunction& weight() const { return wf_; }
  const CompositeAnsatz& ansatz() const { return *ansatz_; }
  const SourceTerm& source() const { return *source_; }

  double phi_sup_norm() const;
  double phi_h1_norm() const;           // sqrt(int phi^2 + phi_xi^2)
  double initial_h1_norm() const { return initial_h1_; }
  // Extremes of the Dirichlet data imposed so far (the shifted ansatz moves,
  // so the admissible range for a maximum principle is initial data together
  // with everything the boundary nodes were pinned to).
  double boundary_min_seen() const { return bdata_min_; }
  double boundary_max_seen() const { return bdata_max_; }

private:
  void rebuild_ansatz_row();        // utilde_, wslope_, phi_ at (t_, X)
  double boundary_value(double t, double xi, double X) const;
  void check_finite() const;

  WaveParameters params_;
  Grid grid_;
  SchemeConfig cfg_;
  WeightFunction wf_;
  std::unique_ptr<ShockProfile> profile_;
  std::unique_ptr<ShockProfileTable> table_;
  std::unique_ptr<ApproxRarefaction> rar_;
  std::unique_ptr<CompositeAnsatz> ansatz_;
  std::unique_ptr<SourceTerm> source_;

  double t_ = 0.0;
  double dt_last_ = 0.0;
  ShiftState shift_;
  std::vector<double> u_, phi_, utilde_, wslope_;
  std::vector<double> foot_;          // warm-start foot points per node
  std::vector<double> stage_, rhs_;   // Heun scratch
  double initial_h1_ = 0.0;
  double bdata_min_ = 0.0, bdata_max_ = 0.0;
};

// Initial perturbation field on a grid (exposed for tests and reporting).
std::vector<double> build_perturbation(const PerturbationSpec& spec,
                                       const Grid& grid,
                                       const ShockProfile& profile);

}  // namespace shocklab

#endif
