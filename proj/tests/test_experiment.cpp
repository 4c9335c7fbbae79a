#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "shocklab/common.hpp"
#include "shocklab/experiment.hpp"
#include "shocklab/sha256.hpp"

using namespace shocklab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(bool(f));
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

const SuiteRow& row_named(const std::vector<SuiteRow>& rows,
                          const std::string& name) {
  for (const SuiteRow& r : rows)
    if (r.check == name) return r;
  FAIL("no suite row named " << name);
  static SuiteRow dummy;
  return dummy;
}

}  // namespace

TEST_CASE("config defaults survive a json round trip") {
  const ExperimentConfig def;
  CHECK(def.kind == "theorem_suite");
  CHECK(def.u_minus == -2.0);
  CHECK(def.u_plus == 1.2);
  CHECK(def.n_cells == 2400);
  CHECK(def.n_samples == 4001);
  CHECK(def.scheme.cfl == 0.4);
  CHECK(def.perturbation.kind == PerturbationSpec::Kind::gaussian);
  CHECK_NOTHROW(def.validate());

  // An empty object parses to the defaults.
  CHECK(ExperimentConfig::from_json_text("{}").canonical_json() ==
        def.canonical_json());

  ExperimentConfig cfg;
  cfg.kind = "evolve";
  cfg.out_dir = "elsewhere";
  cfg.seed = 17;
  cfg.u_plus = 1.1;
  cfg.xi_min = -200.0;
  cfg.xi_max = 400.0;
  cfg.n_cells = 6000;
  cfg.scheme.t_end = 500.0;
  cfg.scheme.output_dt = 2.0;
  cfg.perturbation.kind = PerturbationSpec::Kind::bandlimited_noise;
  cfg.perturbation.amplitude = 0.01;
  cfg.perturbation.n_modes = 5;
  cfg.perturbation.support = 15.0;
  cfg.perturbation.seed = 99;
  cfg.times = {10.0, 100.0, 1000.0};
  const std::string text = cfg.canonical_json();
  CHECK(ExperimentConfig::from_json_text(text).canonical_json() == text);
  CHECK(cfg.canonical_json() == text);  // stable serialization
}

TEST_CASE("config parser rejects malformed input by name") {
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("{"), ConfigError);
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_text("[1, 2]"),
                       "config root must be a JSON object", ConfigError);
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_text(R"({"wave": 1})"),
                       "unknown config key: wave", ConfigError);
  CHECK_THROWS_WITH_AS(
      ExperimentConfig::from_json_text(R"({"scheme": {"dt": 0.1}})"),
      "unknown config key: scheme.dt", ConfigError);
  CHECK_THROWS_WITH_AS(
      ExperimentConfig::from_json_text(R"({"perturbation": {"sigma": 1.0}})"),
      "unknown config key: perturbation.sigma", ConfigError);
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_text(R"({"u_plus": "big"})"),
                       "config key 'u_plus' must be a number", ConfigError);
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_text(R"({"n_cells": 2.5})"),
                       "config key 'n_cells' must be an integer", ConfigError);
  CHECK_THROWS_WITH_AS(
      ExperimentConfig::from_json_text(R"({"seed": -3})"),
      "config key 'seed' must be a non-negative integer", ConfigError);
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_text(R"({"kind": 5})"),
                       "config key 'kind' must be a string", ConfigError);
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json_text(R"({"times": 3})"),
                       "config key 'times' must be an array", ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::from_json_text(R"({"perturbation": {"kind": "boom"}})"),
      ConfigError);
  CHECK_NOTHROW(
      ExperimentConfig::from_json_text(R"({"perturbation": {"kind": "none"}})"));
}

TEST_CASE("config validation guards every numeric invariant") {
  const ExperimentConfig base;
  auto broken = [&](auto&& tweak) {
    ExperimentConfig cfg = base;
    tweak(cfg);
    return cfg;
  };
  CHECK_THROWS_WITH_AS(
      broken([](ExperimentConfig& c) { c.kind = "magic"; }).validate(),
      "unknown experiment kind: magic", ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.out_dir.clear(); }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.budget_seconds = -1.0; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.u_plus = 0.5; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.xi_min = c.xi_max; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.n_cells = 4; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.scheme.cfl = 0.6; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.scheme.cfl = 0.0; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.scheme.t_end = 0.0; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.scheme.output_dt = 0.0; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.scheme.tolerance = 0.0; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.scheme.table_spacing = 0.0; })
          .validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.scheme.blow_up_threshold = 0.0; })
          .validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.perturbation.width = 0.0; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(broken([](ExperimentConfig& c) {
                    c.perturbation.kind =
                        PerturbationSpec::Kind::bandlimited_noise;
                    c.perturbation.n_modes = 0;
                  }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](ExperimentConfig& c) {
                    c.perturbation.kind =
                        PerturbationSpec::Kind::bandlimited_noise;
                    c.perturbation.support = 0.0;
                  }).validate(),
                  ConfigError);
  CHECK_THROWS_WITH_AS(
      broken([](ExperimentConfig& c) { c.times = {1.0, 1.0}; }).validate(),
      "times must be positive and strictly increasing", ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.times = {-1.0}; }).validate(),
      ConfigError);
  CHECK_THROWS_AS(
      broken([](ExperimentConfig& c) { c.n_samples = 8; }).validate(),
      ConfigError);
}

TEST_CASE("weight-algebra run writes a stamped, byte-reproducible artifact set") {
  const fs::path dir = fresh_dir("shocklab_test_weight_run");
  ExperimentConfig cfg;
  cfg.kind = "weight_algebra";
  cfg.out_dir = dir.string();

  REQUIRE(run_experiment(cfg) == 0);
  for (const char* name :
       {"manifest.json", "summary.json", "weight_algebra.csv",
        "weight_algebra.svg"})
    CHECK(fs::exists(dir / name));

  // The manifest is the canonical config, and its hash stamps every artifact.
  const std::string manifest = slurp(dir / "manifest.json");
  CHECK(manifest == cfg.canonical_json());
  const std::string hash = sha256_file((dir / "manifest.json").string());
  CHECK(first_line(slurp(dir / "weight_algebra.csv")) == "# manifest " + hash);

  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("kind") == "weight_algebra");
  CHECK(summary.at("exit_code") == 0);
  CHECK(summary.at("manifest_sha256") == hash);
  REQUIRE(summary.at("checks").size() == 4);
  for (const auto& c : summary.at("checks")) CHECK(c.at("status") == "PASS");

  // Repeat runs are bit-identical.
  const std::string csv_once = slurp(dir / "weight_algebra.csv");
  const std::string summary_once = slurp(dir / "summary.json");
  REQUIRE(run_experiment(cfg) == 0);
  CHECK(slurp(dir / "weight_algebra.csv") == csv_once);
  CHECK(slurp(dir / "summary.json") == summary_once);

  fs::remove_all(dir);
}

TEST_CASE("theorem suite skips everything once the wall-clock budget is spent") {
  const fs::path dir = fresh_dir("shocklab_test_budget_run");
  ExperimentConfig cfg;
  cfg.out_dir = dir.string();
  cfg.budget_seconds = 1e-12;

  const std::vector<SuiteRow> rows = theorem_suite(cfg);
  REQUIRE(rows.size() == 29);
  for (const SuiteRow& r : rows) {
    CHECK(r.status == "SKIPPED");
    CHECK(r.detail == "wall-clock budget exhausted");
  }
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "suite.csv"));
  fs::remove_all(dir);
}

TEST_CASE("pure-shock suite marks fan-specific checks not applicable") {
  const fs::path dir = fresh_dir("shocklab_test_pure_suite");
  ExperimentConfig cfg;
  cfg.out_dir = dir.string();
  cfg.u_plus = 1.0;  // no rarefaction
  cfg.n_cells = 400;
  cfg.scheme.t_end = 2.0;
  cfg.scheme.output_dt = 0.5;

  const std::vector<SuiteRow> rows = theorem_suite(cfg);
  REQUIRE(rows.size() == 29);

  for (const char* name :
       {"rarefaction_sup_slope", "rarefaction_l2_slope", "rarefaction_l1_mass",
        "rarefaction_exact_gap_ratio", "interaction_shock_into_rarefaction_left",
        "interaction_shock_into_rarefaction_right",
        "interaction_rarefaction_into_shock_left",
        "interaction_smoothing_gap_fan", "interaction_fan_gap",
        "interaction_rarefaction_tail"}) {
    const SuiteRow& r = row_named(rows, name);
    CHECK(r.status == "SKIPPED");
    CHECK(r.detail.find("pure shock") != std::string::npos);
  }
  for (const char* name :
       {"trend_sup_error_decreasing", "trend_shift_rate_decreasing",
        "trend_drift_decreasing", "final_error_fraction_of_peak"}) {
    const SuiteRow& r = row_named(rows, name);
    CHECK(r.status == "SKIPPED");
    CHECK(r.detail.find("composite") != std::string::npos);
  }
  // The pure-shock energy rows are really judged, not skipped.
  for (const char* name : {"contraction_inequality", "energy_monotone",
                           "max_principle", "profile_ode_residual",
                           "steady_shock_preservation"})
    CHECK(row_named(rows, name).status != "SKIPPED");

  fs::remove_all(dir);
}

TEST_CASE("pre-asymptotic time ladders make the interactions run fail cleanly") {
  const fs::path dir = fresh_dir("shocklab_test_bad_ladder");
  ExperimentConfig cfg;
  cfg.kind = "interactions";
  cfg.out_dir = dir.string();
  cfg.times = {1.0, 5.0, 25.0, 125.0};

  // At these times the integrals still sit on their early plateau, far from
  // the fitted asymptotic band, so the run must report failure (exit 1), not
  // silently pass or throw.
  CHECK(run_experiment(cfg) == 1);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("exit_code") == 1);
  bool any_fail = false;
  for (const auto& c : summary.at("checks"))
    if (c.at("status") == "FAIL") any_fail = true;
  CHECK(any_fail);
  fs::remove_all(dir);
}
