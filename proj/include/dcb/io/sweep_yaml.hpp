#pragma once

// Sweep specification files:
//
//   sweep:
//     name: grid
//     mode: uniform            # or combinations
//     policies: [OP, SCB, AM, PU]
//     scenarios: [a.yaml]      # relative to this file
//   # or, instead of scenarios:
//     deployment: {map: [100, 100], min_ap_distance_m: 10, ...}
//     wlan_counts: [2, 5]
//     seeds: [1, 2, 3]
//   radio: ...                 # shared by generated deployments
//   phy: ...
//   solver: ...

#include <filesystem>
#include <fstream>
#include <string>

#include "dcb/io/scenario_yaml.hpp"
#include "dcb/sweep.hpp"

namespace dcb::io {

[[nodiscard]] inline SweepSpec parse_sweep_node(const YAML::Node& root, const std::filesystem::path& base_dir) {
  yaml::check_keys(root, "", {"sweep", "radio", "phy", "solver"});
  const auto s = root["sweep"];
  if (!s) throw ConfigError("sweep: required");
  yaml::check_keys(s, "sweep", {"name", "mode", "policies", "scenarios", "deployment", "wlan_counts", "seeds"});
  SweepSpec spec;
  yaml::read(s, "sweep", "name", spec.name);
  if (s["mode"]) {
    const auto mode = yaml::as<std::string>(s["mode"], "sweep.mode");
    if (mode == "uniform")
      spec.mode = SweepMode::Uniform;
    else if (mode == "combinations")
      spec.mode = SweepMode::Combinations;
    else
      throw ConfigError("sweep.mode: expected 'uniform' or 'combinations', got '" + mode + "'");
  }
  if (const auto p = s["policies"]) {
    if (!p.IsSequence()) throw ConfigError("sweep.policies: expected a list");
    spec.policies.clear();
    for (std::size_t i = 0; i < p.size(); ++i)
      spec.policies.push_back(yaml::read_policy(p[i], "sweep.policies[" + std::to_string(i) + "]"));
  }
  if (const auto sc = s["scenarios"]) {
    if (!sc.IsSequence()) throw ConfigError("sweep.scenarios: expected a list of paths");
    for (std::size_t i = 0; i < sc.size(); ++i) {
      const std::filesystem::path p(yaml::as<std::string>(sc[i], "sweep.scenarios[" + std::to_string(i) + "]"));
      spec.scenarios.push_back(parse_scenario_file((p.is_absolute() ? p : base_dir / p).string()));
    }
  }
  if (const auto d = s["deployment"]) {
    DeploymentSpec dep;
    read_deployment_fields(d, "sweep.deployment", dep, false);
    read_shared_sections(root, dep);
    spec.deployment = dep;
  } else if (root["radio"] || root["phy"] || root["solver"]) {
    throw ConfigError("radio/phy/solver sections apply only to deployment sweeps");
  }
  if (const auto m = s["wlan_counts"]) {
    if (!m.IsSequence()) throw ConfigError("sweep.wlan_counts: expected a list");
    for (std::size_t i = 0; i < m.size(); ++i)
      spec.wlan_counts.push_back(yaml::as<int>(m[i], "sweep.wlan_counts[" + std::to_string(i) + "]"));
  }
  if (const auto seeds = s["seeds"]) {
    if (!seeds.IsSequence()) throw ConfigError("sweep.seeds: expected a list");
    for (std::size_t i = 0; i < seeds.size(); ++i)
      spec.seeds.push_back(yaml::as<std::uint64_t>(seeds[i], "sweep.seeds[" + std::to_string(i) + "]"));
  }
  spec.validate();
  return spec;
}

[[nodiscard]] inline SweepSpec parse_sweep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open sweep spec");
  try {
    return parse_sweep_node(load_yaml(in), std::filesystem::path(path).parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace dcb::io
