#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "shocklab/common.hpp"
#include "shocklab/diagnostics.hpp"
#include "shocklab/fitting.hpp"
#include "shocklab/quadrature.hpp"
#include "shocklab/solver.hpp"
#include "shocklab/waves.hpp"
#include "shocklab/weight.hpp"

using namespace shocklab;

namespace {

WaveParameters pure_params() { return WaveParameters::composite(-2.0, 1.0, 1.0); }
WaveParameters comp_params() { return WaveParameters::composite(-2.0, 1.2, 1.0); }

// Scale against which the exact regrouping identities should close: the sum
// of magnitudes of everything that enters either side.
double ledger_scale(const EnergyBreakdown& b) {
  return std::abs(b.Xdot * b.Y) + std::abs(b.Jgood) + std::abs(b.Jbad) +
         std::abs(b.GS) + std::abs(b.GR) + std::abs(b.GSR) + std::abs(b.N) +
         std::abs(b.J) + 1e-30;
}

}  // namespace

TEST_CASE("weighted energy matches a state-space oracle") {
  const WaveParameters prm = pure_params();
  const ShockProfile profile(prm, 0.0, 1e-13);
  const ShockProfileTable table(profile, -90.0, 90.0, 5e-3);
  const WeightFunction wf(prm);
  // The left edge stays at xi = -1 so the state-space integrand's boundary
  // layer in u - u_minus (width e^{9 xi}) stays resolvable by the adaptive
  // quadrature on the oracle side.
  const Grid grid = Grid::uniform(-1.0, 2.0, 4000);

  // With phi constant the integral is int w(U(xi + X)) dxi, which the
  // profile ODE mu U' = (U - u_minus)(U - u_mid)^2 turns into a state-space
  // integral of w(u) mu / ((u - u_minus)(u_mid - u)^2) between the boundary
  // states. Nothing on that side touches the table or the trapezoid rule.
  const std::vector<double> ones(grid.nodes.size(), 1.0);
  for (double X : {0.0, 0.7}) {
    const double got = weighted_energy(ones, table, wf, X, grid);
    const double lo = profile.eval(grid.xi_min + X);
    const double hi = profile.eval(grid.xi_max + X);
    const double want = adaptive_simpson(
        [&](double u) {
          return wf.eval(u) * prm.mu /
                 ((u - prm.u_minus) * (prm.u_mid - u) * (prm.u_mid - u));
        },
        lo, hi, 1e-12, 1e-14);
    CHECK(got == doctest::Approx(want).epsilon(1e-5));
  }

  const std::vector<double> zeros(grid.nodes.size(), 0.0);
  CHECK(weighted_energy(zeros, table, wf, 0.0, grid) == 0.0);

  const std::vector<double> short_row(5, 1.0);
  CHECK_THROWS_AS(weighted_energy(short_row, table, wf, 0.0, grid),
                  ConfigError);
}

TEST_CASE("energy breakdown closes its regrouping identities on a live run") {
  const WaveParameters prm = comp_params();
  const Grid grid = Grid::uniform(-60.0, 60.0, 1200);
  SchemeConfig cfg;
  cfg.t_end = 5.0;
  PerturbationSpec bump;
  bump.kind = PerturbationSpec::Kind::gaussian;
  bump.amplitude = 0.05;
  bump.center = 0.0;
  bump.width = 3.0;
  Simulation sim(prm, grid, cfg, bump);

  auto audit = [&](const EnergyBreakdown& b) {
    CHECK(std::abs(b.regroup_residual) <= 1e-12 * ledger_scale(b));
    const double split_scale =
        std::abs(b.GS) + std::abs(b.GS1) + std::abs(b.GS2) + 1e-30;
    CHECK(std::abs(b.split_residual) <= 1e-12 * split_scale);
    CHECK(b.E_w > 0.0);
    CHECK(b.t == sim.t());
    CHECK(b.X == sim.shift().X);
  };

  const EnergyBreakdown b0 = energy_breakdown(sim);
  audit(b0);
  // At t = 0 the shift vanishes, so the unshifted-frame ledger sees exactly
  // the nodal phi and both energy paths sum the same products.
  CHECK(b0.X == 0.0);
  CHECK(b0.Xdot ==
        doctest::Approx(sim.shift().Xdot).epsilon(1e-12));
  CHECK(b0.E_w == doctest::Approx(weighted_energy(sim.phi(), sim.profile_table(),
                                                  sim.weight(), 0.0, grid))
                      .epsilon(1e-12));

  for (int k = 0; k < 200; ++k) sim.step();
  const EnergyBreakdown b1 = energy_breakdown(sim);
  audit(b1);
  // Once X has moved, the unshifted ledger interpolates phi, so the two
  // energy paths agree only to interpolation accuracy.
  CHECK(b1.E_w ==
        doctest::Approx(weighted_energy(sim.phi(), sim.profile_table(),
                                        sim.weight(), sim.shift().X, grid))
            .epsilon(2e-2));

  for (int k = 0; k < 300; ++k) sim.step();
  audit(energy_breakdown(sim));
}

TEST_CASE("pure-shock breakdown zeroes every rarefaction channel") {
  const WaveParameters prm = pure_params();
  const Grid grid = Grid::uniform(-60.0, 60.0, 600);
  SchemeConfig cfg;
  PerturbationSpec bump;
  bump.kind = PerturbationSpec::Kind::gaussian;
  bump.amplitude = 0.1;
  bump.width = 2.0;
  Simulation sim(prm, grid, cfg, bump);
  for (int k = 0; k < 50; ++k) sim.step();

  const EnergyBreakdown b = energy_breakdown(sim);
  // Without a fan there is no rarefaction factor anywhere: these channels
  // are assembled purely from products with u^R - u_m = 0 and u^R_x = 0.
  CHECK(b.GR == 0.0);
  CHECK(b.GSR == 0.0);
  CHECK(b.J == 0.0);
  CHECK(b.Fterm == 0.0);
  CHECK(b.E_w > 0.0);
  CHECK(b.dissipation > 0.0);
  CHECK(b.Jgood > 0.0);
  CHECK(b.GS > 0.0);

  const ContractionVerdict v = contraction_monitor({b}, prm.u_mid, prm.mu);
  CHECK(v.inequality_ok);
  CHECK(v.worst_increase == 0.0);
}

TEST_CASE("contraction monitor arithmetic on synthetic ledgers") {
  EnergyBreakdown a;
  a.t = 0.0;
  a.E_w = 1.0;
  a.GS = 10.0;
  a.phi_xi_sq = 1.0;
  a.phi2_Uxi = 1.0;
  EnergyBreakdown b;
  b.t = 1.0;
  b.E_w = 0.5;
  b.GS = 2.0;
  b.Xdot = 1.0;

  SUBCASE("margins and decay bookkeeping") {
    const ContractionVerdict v = contraction_monitor({a, b}, 1.0, 1.0);
    CHECK(v.inequality_ok);
    CHECK(v.energy_monotone);
    // rhs(a) = 5/16 + 4/5 = 1.1125, rhs(b) = 25/64.
    CHECK(v.worst_margin == doctest::Approx(2.0 - 25.0 / 64.0).epsilon(1e-15));
    CHECK(v.worst_margin_t == 1.0);
    CHECK(v.worst_increase == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(v.worst_increase_t == 1.0);
  }

  SUBCASE("inequality violation is flagged with its time") {
    EnergyBreakdown c = b;
    c.t = 2.0;
    c.GS = 0.2;
    const ContractionVerdict v = contraction_monitor({a, c}, 1.0, 1.0);
    CHECK_FALSE(v.inequality_ok);
    CHECK(v.worst_margin == doctest::Approx(0.2 - 25.0 / 64.0).epsilon(1e-15));
    CHECK(v.worst_margin_t == 2.0);
  }

  SUBCASE("relative slack on the inequality") {
    EnergyBreakdown e;
    e.E_w = 1.0;
    e.phi4_wprime_Uxi = 4.0 / 3.0;  // rhs = 1 up to rounding
    e.GS = 1.0 - 1e-7;
    CHECK_FALSE(contraction_monitor({e}, 1.0, 1.0).inequality_ok);
    CHECK(contraction_monitor({e}, 1.0, 1.0, 1e-6).inequality_ok);
  }

  SUBCASE("energy increase is flagged unless it starts below the floor") {
    EnergyBreakdown d = b;
    d.t = 2.0;
    d.E_w = 0.6;
    const ContractionVerdict bad = contraction_monitor({a, b, d}, 1.0, 1.0);
    CHECK_FALSE(bad.energy_monotone);
    CHECK(bad.worst_increase == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(bad.worst_increase_t == 2.0);

    // Same trajectory judged with a truncation floor of 0.75: the pair that
    // rises starts at 0.5, below the floor, so only the decaying pair counts.
    const ContractionVerdict gated =
        contraction_monitor({a, b, d}, 1.0, 1.0, 1e-8, 0.75);
    CHECK(gated.energy_monotone);
    CHECK(gated.worst_increase == doctest::Approx(-0.5).epsilon(1e-12));
  }

  SUBCASE("degenerate trajectories") {
    CHECK_THROWS_AS(contraction_monitor({}, 1.0, 1.0), ConfigError);

    const ContractionVerdict solo = contraction_monitor({a}, 1.0, 1.0);
    CHECK(solo.energy_monotone);
    CHECK(solo.worst_increase == 0.0);

    // Everything below the floor: no judged pairs at all.
    EnergyBreakdown lo1, lo2;
    lo1.E_w = 0.1;
    lo2.E_w = 0.2;
    lo2.t = 1.0;
    const ContractionVerdict idle =
        contraction_monitor({lo1, lo2}, 1.0, 1.0, 1e-8, 0.5);
    CHECK(idle.energy_monotone);
    CHECK(idle.worst_increase == 0.0);
  }
}

TEST_CASE("interaction ladder reproduces independent reference values") {
  const WaveParameters prm = comp_params();
  const std::vector<double> times = {1250.0, 5000.0, 25000.0, 125000.0};
  const InteractionReport rep = interaction_integrals(prm, times);

  REQUIRE(rep.times == times);
  for (int k = 0; k < 6; ++k) {
    REQUIRE(rep.values[k].size() == times.size());
    CHECK_FALSE(rep.labels[k].empty());
  }

  // 25-digit quadrature of the same six integrals at t = 1250, computed from
  // scratch (bisection foot points, no shared code).
  const std::array<double, 6> reference = {
      2.7275326030649854e-4, 3.4936781736577465e-4, 1.6486350386325235e-4,
      8.0391955695088679e-5, 3.4695342763480852e-4, 4.0387542630015990e-5};
  for (int k = 0; k < 6; ++k)
    CHECK(rep.values[k][0] == doctest::Approx(reference[k]).epsilon(1e-6));

  // Every channel decays along the ladder, and the fitted log-log slopes sit
  // in the expected band: algebraic decay for the first five, and the purely
  // hyperbolic last channel is already indistinguishable from exponent -1.
  for (int k = 0; k < 6; ++k) {
    CHECK(rep.values[k][0] > rep.values[k][1]);
    CHECK(rep.values[k][1] > rep.values[k][2]);
    CHECK(rep.fits[k].slope < -0.5);
    CHECK(rep.fits[k].slope > -1.3);
    CHECK(rep.fits[k].r2 > 0.9);
  }
  CHECK(rep.fits[5].slope == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("fit helpers recover exact laws and reject bad data") {
  SUBCASE("line") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> y(4);
    for (int i = 0; i < 4; ++i) y[i] = 2.0 * x[i] + 1.0;
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("power law") {
    const std::vector<double> x = {1.0, 2.0, 4.0, 8.0};
    std::vector<double> y(4);
    for (int i = 0; i < 4; ++i) y[i] = 3.0 * std::pow(x[i], -1.5);
    const LineFit f = fit_power_law(x, y);
    CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("rejections") {
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0, 3.0}, {1.0, 0.0, 1.0}),
                    NumericalError);
    CHECK_THROWS_AS(fit_power_law({1.0, -2.0, 3.0}, {1.0, 1.0, 1.0}),
                    NumericalError);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {1.0, 1.0}), NumericalError);

    const std::vector<double> x = {1.0, 2.0, 4.0, 8.0};
    const std::vector<double> scatter = {1.0, 10.0, 1.0, 10.0};
    CHECK_THROWS_AS(fit_power_law_checked(x, scatter, 0.95), NumericalError);

    std::vector<double> clean(4);
    for (int i = 0; i < 4; ++i) clean[i] = 3.0 * std::pow(x[i], -1.5);
    const LineFit f = fit_power_law_checked(x, clean, 0.999);
    CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-12));
  }
}

TEST_CASE("asymptotic pattern distance is zero on untouched pure-shock data") {
  const WaveParameters prm = pure_params();
  const Grid grid = Grid::uniform(-60.0, 60.0, 600);
  SchemeConfig cfg;
  PerturbationSpec none;
  Simulation sim(prm, grid, cfg, none);
  const ExactRarefaction fan(prm);

  CHECK(asymptotic_sup_error(sim, fan) <= 1e-13);
  const ConvergencePoint p0 = convergence_point(sim, fan);
  CHECK(p0.t == 0.0);
  CHECK(p0.sup_error <= 1e-13);
  CHECK(p0.X_over_t == 0.0);
  CHECK(p0.Xdot == sim.shift().Xdot);

  for (int k = 0; k < 20; ++k) sim.step();
  const ConvergencePoint p1 = convergence_point(sim, fan);
  CHECK(p1.t == sim.t());
  // Once stepping starts, the field relaxes to the scheme's own discrete
  // steady profile, which sits O(h^2 U'') from the exact one at the core.
  CHECK(p1.sup_error <= 2.0 * grid.h * grid.h);
  CHECK(p1.X_over_t == sim.shift().X / sim.t());
}
