#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"

using namespace dcb;

namespace {

ScenarioReport run(const std::string& file, std::vector<Policy> p) {
  return evaluate(oracle::with_policies(oracle::load(file), p));
}

double mbps(const ScenarioReport& r, std::size_t w) { return r.wlans.at(w).throughput_mbps(); }

}  // namespace

// Regression values of this engine on the shipped fixtures (0.01 Mbps).
TEST(Throughput, ScenarioOne) {
  auto op = run("scenario_i.yaml", {Policy::OnlyPrimary});
  EXPECT_NEAR(mbps(op, 0), 109.36, 0.01);
  EXPECT_NEAR(mbps(op, 1), 109.36, 0.01);
  auto scb = run("scenario_i.yaml", {Policy::StaticBonding});
  EXPECT_NEAR(mbps(scb, 0), 132.75, 0.01);
  auto am = run("scenario_i.yaml", {Policy::AlwaysMax});
  EXPECT_NEAR(mbps(am, 0), 206.68, 0.01);
  EXPECT_NEAR(mbps(am, 1), 199.67, 0.01);
  auto pu = run("scenario_i.yaml", {Policy::ProbabilisticUniform});
  EXPECT_NEAR(mbps(pu, 0), 142.70, 0.01);
  EXPECT_NEAR(mbps(pu, 1), 142.00, 0.01);
}

TEST(Throughput, ScenarioTwo) {
  EXPECT_NEAR(mbps(run("scenario_ii.yaml", {Policy::OnlyPrimary}), 0), 109.36, 0.01);
  EXPECT_NEAR(mbps(run("scenario_ii.yaml", {Policy::StaticBonding}), 0), 102.65, 0.01);
  EXPECT_NEAR(mbps(run("scenario_ii.yaml", {Policy::AlwaysMax}), 1), 102.65, 0.01);
  EXPECT_NEAR(mbps(run("scenario_ii.yaml", {Policy::ProbabilisticUniform}), 0), 109.29, 0.01);
}

TEST(Throughput, ScenarioFourAlwaysMax) {
  const auto r = run("scenario_iv.yaml", {Policy::AlwaysMax});
  EXPECT_NEAR(mbps(r, 0), 199.96, 0.01);
  EXPECT_NEAR(mbps(r, 1), 3.58, 0.01);
  EXPECT_NEAR(mbps(r, 2), 199.96, 0.01);
  EXPECT_NEAR(r.total_throughput_bps / 1e6, 403.49, 0.01);
  EXPECT_NEAR(r.fairness.jain, 0.67853, 1e-5);
}

TEST(Throughput, ScenarioFourMixed) {
  const auto r = run("scenario_iv.yaml", {Policy::AlwaysMax, Policy::ProbabilisticUniform, Policy::AlwaysMax});
  EXPECT_NEAR(mbps(r, 0), 149.41, 0.01);
  EXPECT_NEAR(mbps(r, 1), 62.45, 0.01);
  EXPECT_NEAR(r.fairness.proportional, 6.144, 0.001);
}

TEST(Throughput, PacketErrorRateScalesLinearly) {
  auto cfg = oracle::load("scenario_ii.yaml");
  const double base = evaluate(cfg).wlans[0].throughput_bps;
  cfg.phy.packet_error_rate = 0.1;
  EXPECT_NEAR(evaluate(cfg).wlans[0].throughput_bps, 0.9 * base, 1e-6 * base);
}

TEST(Throughput, IsolatedWlanClosedForm) {
  ScenarioConfig cfg;
  cfg.n_sys = 4;
  cfg.wlans = {{"A", {0, 0}, {{2, 0}}, {{1, 4}, 1}, Policy::AlwaysMax}};
  const auto a = analyze(cfg);
  const auto& link = a.model.wlan(0).links.back();
  ASSERT_TRUE(link.mcs.has_value());
  const double expected =
      oracle::isolated_throughput_bps(backoff_rate(cfg.phy), link.departure_rate, 768000.0, 0.1);
  EXPECT_NEAR(a.report.wlans[0].throughput_bps, expected, 1e-9 * expected);
  // AM with the whole band free: expected bandwidth is airtime times 80 MHz.
  EXPECT_NEAR(a.report.wlans[0].bandwidth_mhz, 80.0 * a.report.wlans[0].airtime, 1e-9);
}

TEST(Throughput, HiddenNodeStarvesWithoutCapture) {
  const auto r = run("scenario_iii_t3_noce.yaml", {Policy::AlwaysMax});
  EXPECT_LT(mbps(r, 1), 0.05 * mbps(r, 0));
  const auto share = r.wlans[1].capture_share;
  // B decodes alone or next to one neighbour, never with both.
  const auto c = explore(CtmnModel(oracle::load("scenario_iii_t3_noce.yaml")));
  for (std::size_t k = 0; k < c.feasible.size(); ++k) {
    const auto& s = c.feasible[k];
    if (!s.active(1)) continue;
    EXPECT_EQ(share[k], s.active(0) && s.active(2) ? 0.0 : 1.0) << k;
  }
}

TEST(Airtime, ScenarioThreeT3) {
  const auto r = run("scenario_iii_t3.yaml", {Policy::AlwaysMax});
  EXPECT_NEAR(r.wlans[1].airtime, 0.5015, 0.005);
  EXPECT_NEAR(r.wlans[1].bandwidth_mhz, 20.0 * r.wlans[1].airtime, 1e-12);
}

TEST(Airtime, BoundsAndInactiveWlan) {
  for (Policy p : kAllPolicies) {
    const auto r = run("scenario_i.yaml", {p});
    for (const auto& w : r.wlans) {
      EXPECT_GE(w.airtime, 0.0);
      EXPECT_LE(w.airtime, 1.0);
      EXPECT_GE(w.throughput_bps, 0.0);
    }
  }
  ScenarioConfig cfg;
  cfg.n_sys = 1;
  cfg.radio.tx_power_dbm = -std::numeric_limits<double>::infinity();
  cfg.wlans = {{"A", {0, 0}, {{1, 0}}, {{1, 1}, 1}, Policy::AlwaysMax}};
  const auto r = evaluate(cfg);
  EXPECT_EQ(r.wlans[0].throughput_bps, 0.0);
}

TEST(Fairness, EqualThroughputs) {
  std::vector<WlanReport> w(3);
  for (auto& r : w) r.throughput_bps = 50e6;
  const auto f = fairness(w);
  EXPECT_DOUBLE_EQ(f.jain, 1.0);
  EXPECT_NEAR(f.proportional, 3 * std::log10(50.0), 1e-12);
  EXPECT_TRUE(f.starved.empty());
}

TEST(Fairness, StarvationGivesMinusInfinity) {
  std::vector<WlanReport> w(2);
  w[0].name = "A";
  w[0].throughput_bps = 10e6;
  w[1].name = "B";
  const auto f = fairness(w);
  EXPECT_TRUE(std::isinf(f.proportional) && f.proportional < 0);
  EXPECT_EQ(f.starved, std::vector<std::string>{"B"});
  EXPECT_DOUBLE_EQ(f.jain, 0.5);
}

TEST(Fairness, JainEdgeCases) {
  EXPECT_DOUBLE_EQ(jain_index({0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(jain_index({1, 0, 0, 0}), 0.25);
}

TEST(Report, TotalsAndSizes) {
  const auto r = run("scenario_i.yaml", {Policy::ProbabilisticUniform});
  EXPECT_NEAR(r.total_throughput_bps, r.wlans[0].throughput_bps + r.wlans[1].throughput_bps, 1e-6);
  EXPECT_EQ(r.global_states, 12u);
  EXPECT_EQ(r.feasible_states, 10u);
  EXPECT_EQ(r.policy_label(), "PU-PU");
  EXPECT_EQ(r.state_labels.front(), "-");
}
