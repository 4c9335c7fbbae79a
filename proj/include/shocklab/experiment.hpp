#ifndef SHOCKLAB_EXPERIMENT_HPP
#define SHOCKLAB_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shocklab/solver.hpp"

namespace shocklab {

// Full description of one experiment run. Parsed from a JSON config file,
// then overridable by command-line flags. The validated config is echoed
// verbatim into the run manifest, and the manifest's SHA-256 stamps every
// output file, so a run is reproducible from its outputs alone.
struct ExperimentConfig {
  std::string kind = "theorem_suite";
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  double budget_seconds = 0.0;  // 0 disables the budget check

  double u_minus = -2.0;
  double u_plus = 1.2;  // composite wave; set to u_mid = 1 for pure shock
  double mu = 1.0;

  double xi_min = -60.0;
  double xi_max = 60.0;
  int n_cells = 2400;

  SchemeConfig scheme;
  // Default: a small Gaussian bump so the default run exercises the energy
  // machinery; set kind "none" for unperturbed runs.
  PerturbationSpec perturbation{PerturbationSpec::Kind::gaussian,
                                0.05, 0.0, 1.0, 0.0, 8, 20.0, 0};

  // Time ladder for decay studies (interactions, rarefaction); when empty a
  // geometric default ladder over [1e2, 1e4] is used.
  std::vector<double> times;
  int n_samples = 4001;  // state-space sweep resolution (weight_algebra)

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  void validate() const;          // throws ConfigError
  std::string canonical_json() const;
};

// Outcome of one checked claim inside the theorem suite.
struct SuiteRow {
  std::string check;
  std::string status;  // PASS / FAIL / SKIPPED / INCONCLUSIVE
  double observed = 0.0;
  double expected = 0.0;
  std::string detail;
};

// Runs one experiment kind, writing manifest, CSVs, SVG plots, and a summary
// JSON into cfg.out_dir. Returns 0 when every performed check passes and 1
// when at least one check fails; configuration and numerical failures are
// reported by throwing ConfigError / NumericalError instead.
int run_experiment(const ExperimentConfig& cfg);

// The theorem-suite checks, exposed for the acceptance harness.
std::vector<SuiteRow> theorem_suite(const ExperimentConfig& cfg);

}  // namespace shocklab

#endif
