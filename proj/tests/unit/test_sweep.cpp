#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"

using namespace dcb;

namespace {

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

std::size_t aggregates(const std::vector<CsvRow>& rows) {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CsvRow& r) { return r.scope == "aggregate"; }));
}

}  // namespace

TEST(Sweep, DeploymentGridHasOneAggregatePerRun) {
  const auto spec = io::parse_sweep_file(oracle::scenario_path("sweep_deployments.yaml"));
  const auto rows = run_sweep(spec, 2);
  EXPECT_EQ(aggregates(rows), 24u);
  for (const auto& r : rows) EXPECT_TRUE(r.error.empty()) << r.error;
  // 3 seeds x 4 policies x (2 + 5 WLAN rows).
  EXPECT_EQ(rows.size(), 24u + 3 * 4 * (2 + 5));
}

TEST(Sweep, ScenarioFourCombinations) {
  const auto spec = io::parse_sweep_file(oracle::scenario_path("sweep_scenario_iv.yaml"));
  const auto rows = run_sweep(spec, 1);
  EXPECT_EQ(aggregates(rows), 64u);
  std::set<std::string> labels;
  for (const auto& r : rows)
    if (r.scope == "aggregate") labels.insert(r.policy);
  EXPECT_EQ(labels.size(), 64u);
  EXPECT_TRUE(labels.count("AM-PU-AM"));
}

TEST(Sweep, OutputIndependentOfWorkerCount) {
  const auto spec = io::parse_sweep_file(oracle::scenario_path("sweep_toy.yaml"));
  EXPECT_EQ(to_csv(run_sweep(spec, 1)), to_csv(run_sweep(spec, 4)));
}

TEST(Sweep, FailedRunBecomesErrorRow) {
  SweepSpec spec;
  spec.policies = {Policy::AlwaysMax};
  auto cfg = oracle::load("scenario_iv.yaml");
  cfg.solver.state_cap = 2;
  spec.scenarios = {oracle::load("scenario_i.yaml"), cfg};
  const auto rows = run_sweep(spec, 2);
  std::size_t errors = 0;
  for (const auto& r : rows)
    if (!r.error.empty()) {
      ++errors;
      EXPECT_EQ(r.scenario, cfg.name);
      EXPECT_NE(r.error.find("state"), std::string::npos);
    }
  EXPECT_EQ(errors, 1u);
  EXPECT_EQ(aggregates(rows), 2u);
}

TEST(Sweep, TooManyCombinationsIsRejected) {
  SweepSpec spec;
  spec.mode = SweepMode::Combinations;
  DeploymentSpec d;
  spec.deployment = d;
  spec.wlan_counts = {12};
  spec.seeds = {1};
  EXPECT_THROW((void)run_sweep(spec), ConfigError);
}

TEST(Sweep, WorkerResolution) {
  EXPECT_EQ(resolve_workers(3u), 3u);
  EXPECT_GE(resolve_workers(std::nullopt), 1u);
}

TEST(Compare, Classify) {
  EXPECT_EQ(classify(10.0, 9.0, 0.5), Outcome::AmBest);
  EXPECT_EQ(classify(9.0, 10.0, 0.5), Outcome::PuBest);
  EXPECT_EQ(classify(10.0, 9.6, 0.5), Outcome::Draw);
  EXPECT_EQ(classify(10.0, 9.5, 0.5), Outcome::Draw);
}

TEST(Compare, GroupsSweepOutput) {
  const auto spec = io::parse_sweep_file(oracle::scenario_path("sweep_deployments.yaml"));
  std::istringstream in(to_csv(run_sweep(spec, 2)));
  const auto s = compare_am_pu(in, 0.5);
  EXPECT_EQ(s.rows.size(), 6u);
  EXPECT_EQ(s.am_best + s.pu_best + s.draw, 6u);
  EXPECT_EQ(s.skipped, 0u);
  for (const auto& c : s.rows) EXPECT_EQ(c.outcome, classify(c.am_mbps, c.pu_mbps, 0.5));
}

TEST(Compare, PerWlanAndFixedScenario) {
  SweepSpec spec;
  spec.policies = {Policy::AlwaysMax, Policy::ProbabilisticUniform};
  spec.scenarios = {oracle::load("scenario_i.yaml")};
  const auto csv = to_csv(run_sweep(spec));
  std::istringstream in(csv);
  const auto s = compare_am_pu(in, 0.5, "A");
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_NEAR(s.rows[0].am_mbps, 206.68, 0.01);
  EXPECT_NEAR(s.rows[0].pu_mbps, 142.70, 0.01);
  EXPECT_EQ(s.rows[0].outcome, Outcome::AmBest);
  std::istringstream missing(csv);
  EXPECT_EQ(compare_am_pu(missing, 0.5, "Z").skipped, 1u);
}

TEST(Compare, RejectsForeignInput) {
  std::istringstream in("a,b,c\n");
  EXPECT_THROW((void)compare_am_pu(in), ConfigError);
  std::istringstream ok(std::string(kCsvHeader) + "\n");
  EXPECT_THROW((void)compare_am_pu(ok, -1.0), ConfigError);
}
