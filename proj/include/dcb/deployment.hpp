#pragma once

// Seeded random deployments: APs uniform in a rectangle with a minimum
// pairwise distance, STAs uniform over an annulus around their AP, random
// primary channel and allocation width.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dcb/channelization.hpp"
#include "dcb/error.hpp"
#include "dcb/policy.hpp"
#include "dcb/random.hpp"
#include "dcb/scenario.hpp"

namespace dcb {

enum class PolicyAssignment {
  Fixed,          // every WLAN uses `policy`
  UniformRandom,  // each WLAN draws one of the four policies
};

struct DeploymentSpec {
  std::string name = "deployment";
  double map_width_m = 100.0;
  double map_height_m = 100.0;
  int wlan_count = 2;
  double min_ap_distance_m = 10.0;
  double sta_min_distance_m = 1.0;
  double sta_max_distance_m = 5.0;
  int stas_per_wlan = 1;
  int n_sys = 8;
  // Allocation widths drawn uniformly from this list.
  std::vector<int> widths{1, 2, 4, 8};
  PolicyAssignment assignment = PolicyAssignment::Fixed;
  Policy policy = Policy::AlwaysMax;
  // Per-WLAN overrides applied after the assignment rule; index = WLAN order.
  std::vector<std::optional<Policy>> overrides;
  // Placement attempts per AP before giving up.
  int max_attempts = 10000;
  std::uint64_t seed = 0;
  // Shared parameters copied into the generated scenario.
  RadioConfig radio;
  PhyParams phy;
  SolverOptions solver;

  void validate() const {
    if (wlan_count < 0) throw ConfigError("deployment.wlans: must be >= 0");
    if (!(map_width_m > 0) || !(map_height_m > 0) || !std::isfinite(map_width_m) || !std::isfinite(map_height_m))
      throw ConfigError("deployment.map: dimensions must be positive and finite");
    if (!(min_ap_distance_m >= 0)) throw ConfigError("deployment.min_ap_distance_m: must be >= 0");
    if (!(sta_min_distance_m > 0) || !(sta_max_distance_m >= sta_min_distance_m))
      throw ConfigError("deployment.sta_distance_m: need 0 < min <= max");
    if (stas_per_wlan < 1) throw ConfigError("deployment.stas_per_wlan: must be >= 1");
    if (!is_power_of_two(n_sys) || n_sys > kMaxBasicChannels)
      throw ConfigError("deployment.n_sys: must be a power of two in [1, 64]");
    if (widths.empty()) throw ConfigError("deployment.widths: must not be empty");
    for (int w : widths)
      if (!is_power_of_two(w) || w > n_sys || w > kSupportedWidths.back())
        throw ConfigError("deployment.widths: " + std::to_string(w) +
                          " is not a power of two within n_sys and 160 MHz");
    if (overrides.size() > static_cast<std::size_t>(wlan_count))
      throw ConfigError("deployment.policy_overrides: more entries than WLANs");
    if (max_attempts < 1) throw ConfigError("deployment.max_attempts: must be >= 1");
    radio.validate();
    phy.validate();
  }

  friend bool operator==(const DeploymentSpec&, const DeploymentSpec&) = default;
};

// WLAN names: A..Z, then W26, W27, ...
[[nodiscard]] inline std::string wlan_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return "W" + std::to_string(i);
}

// Draw order per WLAN is fixed: AP (x, y) attempts, then each STA (radius,
// angle), then primary, width and finally the policy when it is random.
[[nodiscard]] inline ScenarioConfig generate_deployment(const DeploymentSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  ScenarioConfig cfg;
  cfg.name = spec.name;
  cfg.n_sys = spec.n_sys;
  cfg.radio = spec.radio;
  cfg.phy = spec.phy;
  cfg.solver = spec.solver;

  std::vector<Position> aps;
  for (int i = 0; i < spec.wlan_count; ++i) {
    std::optional<Position> ap;
    for (int attempt = 0; attempt < spec.max_attempts && !ap; ++attempt) {
      const Position p{rng.uniform(0, spec.map_width_m), rng.uniform(0, spec.map_height_m), 0.0};
      bool ok = true;
      for (const auto& q : aps) ok = ok && distance(p, q) >= spec.min_ap_distance_m;
      if (ok) ap = p;
    }
    if (!ap) {
      const double density = spec.wlan_count / (spec.map_width_m * spec.map_height_m);
      throw ConfigError("deployment: cannot place " + std::to_string(spec.wlan_count) + " APs " +
                        std::to_string(spec.min_ap_distance_m) + " m apart in a " +
                        std::to_string(spec.map_width_m) + " x " + std::to_string(spec.map_height_m) +
                        " m map (density " + std::to_string(density) + " APs/m^2); gave up on AP " +
                        std::to_string(i + 1) + " after " + std::to_string(spec.max_attempts) + " attempts");
    }
    aps.push_back(*ap);

    Wlan w;
    w.name = wlan_name(static_cast<std::size_t>(i));
    w.ap = *ap;
    const double r0 = spec.sta_min_distance_m, r1 = spec.sta_max_distance_m;
    for (int j = 0; j < spec.stas_per_wlan; ++j) {
      // Area-uniform radius on the annulus.
      const double r = std::sqrt(r0 * r0 + rng.uniform01() * (r1 * r1 - r0 * r0));
      const double theta = 2.0 * std::numbers::pi * rng.uniform01();
      w.stas.push_back({ap->x + r * std::cos(theta), ap->y + r * std::sin(theta), 0.0});
    }
    const int primary = static_cast<int>(rng.uniform_int(1, spec.n_sys));
    const int width = spec.widths[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(spec.widths.size()) - 1))];
    // The aligned block of a given width containing the primary is unique.
    const int lo = ((primary - 1) / width) * width + 1;
    w.allocation = {{lo, lo + width - 1}, primary};
    w.policy = spec.policy;
    if (spec.assignment == PolicyAssignment::UniformRandom)
      w.policy = kAllPolicies[static_cast<std::size_t>(rng.uniform_int(0, 3))];
    if (static_cast<std::size_t>(i) < spec.overrides.size() && spec.overrides[static_cast<std::size_t>(i)])
      w.policy = *spec.overrides[static_cast<std::size_t>(i)];
    cfg.wlans.push_back(std::move(w));
  }
  cfg.validate();
  return cfg;
}

}  // namespace dcb
