#ifndef SHOCKLAB_ANSATZ_HPP
#define SHOCKLAB_ANSATZ_HPP

#include <vector>

#include "shocklab/waves.hpp"
#include "shocklab/weight.hpp"

namespace shocklab {

struct Grid;  // solver.hpp

// Shifted composite ansatz in the shock frame xi = x - sigma t:
//   utilde^X(t, xi) = u^S(xi + X) + u^R(1 + t, xi + sigma t + X) - u_mid.
// The +1 time offset keeps the rarefaction away from its t = 0 singularity.
// With delta_R = 0 the rarefaction factor is identically u_mid and the ansatz
// reduces to the shifted profile alone (taken as a fast path).
class CompositeAnsatz {
public:
  CompositeAnsatz(const ShockProfileTable& shock, const ApproxRarefaction& rar);

  struct Jet {
    double value;
    double d1;  // d/dxi
    double d2;  // d2/dxi2
  };

  Jet eval(double t, double xi, double X) const;
  // Variant reusing a previous rarefaction foot point (hot path).
  Jet eval(double t, double xi, double X, double* foot_inout) const;

  const ShockProfileTable& shock() const { return *shock_; }
  const ApproxRarefaction& rarefaction() const { return *rar_; }
  const WaveParameters& params() const { return params_; }

private:
  const ShockProfileTable* shock_;
  const ApproxRarefaction* rar_;
  WaveParameters params_;
};

// Error term of the composite ansatz,
//   F^X = [f(utilde^X) - f((u^R)^X) - f((u^S)^X)]_xi - mu (u^R)^X_xixi,
// split into the wave-interaction part F1 (the bracket, expanded exactly into
// flux-derivative differences since utilde_xi = u^S_xi + u^R_xi) and the
// rarefaction viscosity part F2 = -mu (u^R)^X_xixi.
class SourceTerm {
public:
  explicit SourceTerm(const CompositeAnsatz& ansatz) : ansatz_(&ansatz) {}

  struct Value {
    double total;
    double F1;
    double F2;
  };

  Value eval(double t, double xi, double X) const;

  const CompositeAnsatz& ansatz() const { return *ansatz_; }

private:
  const CompositeAnsatz* ansatz_;
};

// Time-dependent shift and its history. X(0) = 0 always.
struct ShiftState {
  double X = 0.0;
  double Xdot = 0.0;
  struct Sample {
    double t, X, Xdot;
  };
  std::vector<Sample> history;
};

// Right-hand side of the shift rule
//   Xdot = 32/(25 u_mid^2) * int phi(t,xi) w(U(xi+X)) U'(xi+X) dxi
// by trapezoid quadrature of phi against the shifted weightxprofile-slope
// row. Throws a coverage error when the grid captures less than 99% of the
// profile mass delta_S (the neglected tail would then not be negligible).
double shift_rhs(const std::vector<double>& phi, const ShockProfileTable& shock,
                 const WeightFunction& wf, double X, const Grid& grid);

// Same quadrature against a precomputed row of w(U(xi+X)) U'(xi+X) values
// (the solver maintains that row anyway).
double shift_rhs_from_row(const std::vector<double>& phi,
                          const std::vector<double>& weight_slope_row, double h,
                          double u_mid);

// Explicit Euler step of the shift, appending to the history.
void advance_shift(ShiftState& state, double t_new, double Xdot, double dt);

}  // namespace shocklab

#endif
