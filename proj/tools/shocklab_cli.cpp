#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shocklab/common.hpp"
#include "shocklab/experiment.hpp"

namespace {

const char* kKinds =
    "profile, rarefaction, weight_algebra, poincare, interactions, evolve, "
    "theorem_suite";

// Pretty-print the check table from the summary the run just wrote, so the
// console view and the on-disk record cannot disagree.
void print_summary(const std::string& out_dir) {
  std::ifstream f(out_dir + "/summary.json", std::ios::binary);
  if (!f) return;
  nlohmann::json j;
  f >> j;
  std::printf("manifest sha256: %s\n",
              j.value("manifest_sha256", std::string("?")).c_str());
  std::printf("%-42s %-13s %14s %14s\n", "check", "status", "observed",
              "expected");
  for (const auto& r : j["checks"]) {
    std::printf("%-42s %-13s %14.6g %14.6g  %s\n",
                r.value("check", std::string()).c_str(),
                r.value("status", std::string()).c_str(),
                r.value("observed", 0.0), r.value("expected", 0.0),
                r.value("detail", std::string()).c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "shocklab: numerical laboratory for the degenerate-shock /"
      " rarefaction composite of the cubic viscous conservation law"};

  std::string config_path;
  std::string kind;
  std::string out_dir;
  std::uint64_t seed = 0;
  double budget_seconds = -1.0;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--kind", kind,
                 std::string("experiment kind (") + kKinds + ")");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  app.add_option("--budget-seconds", budget_seconds,
                 "wall-clock budget; expensive suite stages are skipped once "
                 "it is exhausted (overrides config)");

  CLI11_PARSE(app, argc, argv);

  try {
    shocklab::ExperimentConfig cfg;
    if (!config_path.empty())
      cfg = shocklab::ExperimentConfig::from_json_file(config_path);
    if (!kind.empty()) cfg.kind = kind;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (budget_seconds >= 0.0) cfg.budget_seconds = budget_seconds;
    cfg.validate();

    const int code = shocklab::run_experiment(cfg);
    print_summary(cfg.out_dir);
    std::printf("outputs written to %s\n", cfg.out_dir.c_str());
    return code;
  } catch (const shocklab::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const shocklab::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
