#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dcb;

TEST(Deployment, ConstraintsHoldOverManySeeds) {
  DeploymentSpec d;
  d.wlan_count = 6;
  d.stas_per_wlan = 3;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    d.seed = seed;
    const auto cfg = generate_deployment(d);
    ASSERT_EQ(cfg.wlans.size(), 6u);
    for (std::size_t i = 0; i < cfg.wlans.size(); ++i) {
      const auto& w = cfg.wlans[i];
      EXPECT_EQ(w.name, wlan_name(i));
      EXPECT_GE(w.ap.x, 0.0);
      EXPECT_LE(w.ap.x, d.map_width_m);
      EXPECT_GE(w.ap.y, 0.0);
      EXPECT_LE(w.ap.y, d.map_height_m);
      for (std::size_t k = 0; k < i; ++k) EXPECT_GE(distance(w.ap, cfg.wlans[k].ap), d.min_ap_distance_m);
      ASSERT_EQ(w.stas.size(), 3u);
      for (const auto& s : w.stas) {
        const double r = distance(s, w.ap);
        EXPECT_GE(r, d.sta_min_distance_m - 1e-9);
        EXPECT_LE(r, d.sta_max_distance_m + 1e-9);
      }
      const int width = w.allocation.channel.width();
      EXPECT_NE(std::find(d.widths.begin(), d.widths.end(), width), d.widths.end());
      EXPECT_EQ((w.allocation.channel.lo - 1) % width, 0);
      EXPECT_GE(w.allocation.primary, w.allocation.channel.lo);
      EXPECT_LE(w.allocation.primary, w.allocation.channel.hi);
      EXPECT_EQ(w.policy, Policy::AlwaysMax);
    }
  }
}

TEST(Deployment, SameSeedSameScenario) {
  DeploymentSpec d;
  d.wlan_count = 5;
  d.seed = 99;
  EXPECT_EQ(generate_deployment(d), generate_deployment(d));
  auto other = d;
  other.seed = 100;
  EXPECT_NE(generate_deployment(d).wlans, generate_deployment(other).wlans);
}

TEST(Deployment, PrefixStable) {
  // Adding WLANs does not move the ones already placed.
  DeploymentSpec d;
  d.seed = 4;
  d.wlan_count = 2;
  const auto small = generate_deployment(d);
  d.wlan_count = 4;
  const auto big = generate_deployment(d);
  EXPECT_EQ(small.wlans[0], big.wlans[0]);
  EXPECT_EQ(small.wlans[1], big.wlans[1]);
}

TEST(Deployment, InfeasibleDensityIsConfigError) {
  DeploymentSpec d;
  d.map_width_m = 10;
  d.map_height_m = 10;
  d.wlan_count = 50;
  d.min_ap_distance_m = 10;
  d.max_attempts = 200;
  try {
    (void)generate_deployment(d);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("density"), std::string::npos);
  }
}

TEST(Deployment, RandomPolicyAndOverrides) {
  DeploymentSpec d;
  d.wlan_count = 20;
  d.assignment = PolicyAssignment::UniformRandom;
  d.overrides = {Policy::OnlyPrimary};
  d.seed = 3;
  const auto cfg = generate_deployment(d);
  EXPECT_EQ(cfg.wlans[0].policy, Policy::OnlyPrimary);
  std::set<Policy> seen;
  for (const auto& w : cfg.wlans) seen.insert(w.policy);
  EXPECT_GT(seen.size(), 1u);
}

TEST(Deployment, ValidationErrors) {
  DeploymentSpec d;
  d.widths = {3};
  EXPECT_THROW(d.validate(), ConfigError);
  d = {};
  d.sta_min_distance_m = 6;
  EXPECT_THROW(d.validate(), ConfigError);
  d = {};
  d.n_sys = 4;
  EXPECT_THROW(d.validate(), ConfigError);  // width 8 exceeds n_sys
  d = {};
  d.wlan_count = 1;
  d.overrides = {Policy::AlwaysMax, Policy::AlwaysMax};
  EXPECT_THROW(d.validate(), ConfigError);
}

TEST(Deployment, WlanNames) {
  EXPECT_EQ(wlan_name(0), "A");
  EXPECT_EQ(wlan_name(25), "Z");
  EXPECT_EQ(wlan_name(26), "W26");
}

TEST(Deployment, GeneratedScenarioRoundTripsThroughYaml) {
  const auto d = io::parse_deployment_file(oracle::scenario_path("deployment.yaml"));
  const auto cfg = generate_deployment(d);
  EXPECT_EQ(io::parse_scenario_string(io::emit_scenario(cfg)), cfg);
  EXPECT_NO_THROW((void)evaluate(cfg));
}
