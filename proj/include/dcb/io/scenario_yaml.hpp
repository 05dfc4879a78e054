#pragma once

// YAML scenario and deployment files. Every section is optional except
// `wlans`; omitted parameters keep their defaults. Unknown keys are rejected
// so typos do not silently fall back to defaults. Durations are given in
// microseconds under `*_us` keys. See docs/scenario-format.md.

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dcb/deployment.hpp"
#include "dcb/error.hpp"
#include "dcb/io/mcs_table.hpp"
#include "dcb/scenario.hpp"

namespace dcb::io {

namespace yaml {

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline void require_map(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) throw ConfigError(path + ": expected a mapping");
}

inline void check_keys(const YAML::Node& n, const std::string& path, const std::set<std::string>& allowed) {
  require_map(n, path.empty() ? "document" : path);
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(join(path, key) + ": unknown key");
  }
}

template <class T>
T as(const YAML::Node& n, const std::string& path) {
  try {
    if (!n.IsScalar()) throw ConfigError(path + ": expected a scalar");
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path + ": invalid value '" + n.Scalar() + "'");
  }
}

template <class T>
void read(const YAML::Node& parent, const std::string& path, const char* key, T& out) {
  if (const auto n = parent[key]) out = as<T>(n, join(path, key));
}

inline void read_us(const YAML::Node& parent, const std::string& path, const char* key, Nanoseconds& out) {
  if (const auto n = parent[key]) {
    const double us = as<double>(n, join(path, key));
    if (!std::isfinite(us)) throw ConfigError(join(path, key) + ": must be finite");
    out = Nanoseconds(std::llround(us * 1000.0));
  }
}

inline std::vector<double> read_numbers(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) throw ConfigError(path + ": expected a list");
  std::vector<double> v;
  for (std::size_t i = 0; i < n.size(); ++i) v.push_back(as<double>(n[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline Position read_position(const YAML::Node& n, const std::string& path) {
  const auto v = read_numbers(n, path);
  if (v.size() != 2 && v.size() != 3) throw ConfigError(path + ": expected [x, y] or [x, y, z]");
  for (double c : v)
    if (!std::isfinite(c)) throw ConfigError(path + ": coordinates must be finite");
  return {v[0], v[1], v.size() == 3 ? v[2] : 0.0};
}

inline Policy read_policy(const YAML::Node& n, const std::string& path) {
  try {
    return parse_policy(as<std::string>(n, path));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline void emit_position(YAML::Emitter& e, const Position& p) {
  e << YAML::Flow << YAML::BeginSeq << p.x << p.y;
  if (p.z != 0.0) e << p.z;
  e << YAML::EndSeq;
}

inline double to_us(Nanoseconds ns) { return static_cast<double>(ns.count()) / 1000.0; }

}  // namespace yaml

inline void read_radio(const YAML::Node& n, const std::string& path, RadioConfig& r) {
  yaml::check_keys(n, path,
                   {"tx_power_dbm", "tx_gain_db", "rx_gain_db", "cca_dbm", "capture_effect_db", "noise_dbm",
                    "bonding_loss_db", "adjacent_leakage_db", "break_distance_m"});
  yaml::read(n, path, "tx_power_dbm", r.tx_power_dbm);
  yaml::read(n, path, "tx_gain_db", r.tx_gain_db);
  yaml::read(n, path, "rx_gain_db", r.rx_gain_db);
  yaml::read(n, path, "cca_dbm", r.cca_dbm);
  yaml::read(n, path, "capture_effect_db", r.capture_effect_db);
  yaml::read(n, path, "noise_dbm", r.noise_dbm);
  yaml::read(n, path, "bonding_loss_db", r.bonding_loss_db);
  yaml::read(n, path, "adjacent_leakage_db", r.adjacent_leakage_db);
  yaml::read(n, path, "break_distance_m", r.break_distance_m);
}

inline void read_phy(const YAML::Node& n, const std::string& path, PhyParams& p) {
  yaml::check_keys(n, path,
                   {"empty_slot_us", "sifs_us", "difs_us", "pifs_us", "legacy_preamble_us", "he_su_preamble_us",
                    "legacy_symbol_us", "he_symbol_us", "frame_bits", "frames_per_ampdu", "block_ack_bits",
                    "rts_bits", "cts_bits", "service_field_bits", "mpdu_delimiter_bits", "mac_header_bits",
                    "tail_bits", "legacy_bits_per_symbol", "cw_min", "backoff_stages", "packet_error_rate"});
  yaml::read_us(n, path, "empty_slot_us", p.empty_slot);
  yaml::read_us(n, path, "sifs_us", p.sifs);
  yaml::read_us(n, path, "difs_us", p.difs);
  yaml::read_us(n, path, "pifs_us", p.pifs);
  yaml::read_us(n, path, "legacy_preamble_us", p.legacy_preamble);
  yaml::read_us(n, path, "he_su_preamble_us", p.he_su_preamble);
  yaml::read_us(n, path, "legacy_symbol_us", p.legacy_symbol);
  yaml::read_us(n, path, "he_symbol_us", p.he_symbol);
  yaml::read(n, path, "frame_bits", p.frame_bits);
  yaml::read(n, path, "frames_per_ampdu", p.frames_per_ampdu);
  yaml::read(n, path, "block_ack_bits", p.block_ack_bits);
  yaml::read(n, path, "rts_bits", p.rts_bits);
  yaml::read(n, path, "cts_bits", p.cts_bits);
  yaml::read(n, path, "service_field_bits", p.service_field_bits);
  yaml::read(n, path, "mpdu_delimiter_bits", p.mpdu_delimiter_bits);
  yaml::read(n, path, "mac_header_bits", p.mac_header_bits);
  yaml::read(n, path, "tail_bits", p.tail_bits);
  yaml::read(n, path, "legacy_bits_per_symbol", p.legacy_bits_per_symbol);
  yaml::read(n, path, "cw_min", p.cw_min);
  yaml::read(n, path, "backoff_stages", p.backoff_stages);
  yaml::read(n, path, "packet_error_rate", p.packet_error_rate);
}

inline void read_solver(const YAML::Node& n, const std::string& path, SolverOptions& s) {
  yaml::check_keys(n, path, {"residual_tolerance", "dense_threshold", "state_cap"});
  yaml::read(n, path, "residual_tolerance", s.residual_tolerance);
  yaml::read(n, path, "dense_threshold", s.dense_threshold);
  yaml::read(n, path, "state_cap", s.state_cap);
}

inline Wlan read_wlan(const YAML::Node& n, const std::string& path) {
  yaml::check_keys(n, path, {"name", "ap", "stas", "channel", "primary", "policy"});
  for (const char* key : {"name", "ap", "stas", "channel", "primary"})
    if (!n[key]) throw ConfigError(yaml::join(path, key) + ": required");
  Wlan w;
  w.name = yaml::as<std::string>(n["name"], path + ".name");
  w.ap = yaml::read_position(n["ap"], path + ".ap");
  const auto stas = n["stas"];
  if (!stas.IsSequence()) throw ConfigError(path + ".stas: expected a list of positions");
  for (std::size_t j = 0; j < stas.size(); ++j)
    w.stas.push_back(yaml::read_position(stas[j], path + ".stas[" + std::to_string(j) + "]"));
  const auto ch = yaml::read_numbers(n["channel"], path + ".channel");
  if (ch.size() != 2 || ch[0] != std::floor(ch[0]) || ch[1] != std::floor(ch[1]))
    throw ConfigError(path + ".channel: expected [lo, hi] basic-channel indices");
  w.allocation.channel = {static_cast<int>(ch[0]), static_cast<int>(ch[1])};
  w.allocation.primary = yaml::as<int>(n["primary"], path + ".primary");
  if (n["policy"]) w.policy = yaml::read_policy(n["policy"], path + ".policy");
  return w;
}

// `base_dir` resolves a relative mcs_table_file.
[[nodiscard]] inline ScenarioConfig parse_scenario_node(const YAML::Node& root,
                                                        const std::filesystem::path& base_dir = {}) {
  yaml::check_keys(root, "", {"name", "n_sys", "radio", "phy", "mcs_table_file", "solver", "output", "wlans"});
  ScenarioConfig cfg;
  yaml::read(root, "", "name", cfg.name);
  yaml::read(root, "", "n_sys", cfg.n_sys);
  if (root["radio"]) read_radio(root["radio"], "radio", cfg.radio);
  if (root["phy"]) read_phy(root["phy"], "phy", cfg.phy);
  if (root["mcs_table_file"]) {
    cfg.mcs_table_file = yaml::as<std::string>(root["mcs_table_file"], "mcs_table_file");
    const std::filesystem::path p(*cfg.mcs_table_file);
    cfg.mcs_table = load_mcs_table((p.is_absolute() ? p : base_dir / p).string());
  }
  if (root["solver"]) read_solver(root["solver"], "solver", cfg.solver);
  if (const auto out = root["output"]) {
    yaml::check_keys(out, "output", {"csv", "ctmn_dump"});
    if (out["csv"]) cfg.output.csv_path = yaml::as<std::string>(out["csv"], "output.csv");
    if (out["ctmn_dump"]) cfg.output.ctmn_dump_path = yaml::as<std::string>(out["ctmn_dump"], "output.ctmn_dump");
  }
  const auto wlans = root["wlans"];
  if (!wlans) throw ConfigError("wlans: required (may be an empty list)");
  if (!wlans.IsSequence()) throw ConfigError("wlans: expected a list");
  for (std::size_t i = 0; i < wlans.size(); ++i)
    cfg.wlans.push_back(read_wlan(wlans[i], "wlans[" + std::to_string(i) + "]"));
  cfg.validate();
  return cfg;
}

[[nodiscard]] inline YAML::Node load_yaml(std::istream& in) {
  try {
    return YAML::Load(in);
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.what());
  }
}

[[nodiscard]] inline ScenarioConfig parse_scenario(std::istream& in, const std::filesystem::path& base_dir = {},
                                                   const std::string& source = "scenario") {
  try {
    return parse_scenario_node(load_yaml(in), base_dir);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

[[nodiscard]] inline ScenarioConfig parse_scenario_string(const std::string& text,
                                                          const std::filesystem::path& base_dir = {}) {
  std::istringstream in(text);
  return parse_scenario(in, base_dir);
}

[[nodiscard]] inline ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open scenario file");
  return parse_scenario(in, std::filesystem::path(path).parent_path(), path);
}

inline void emit_radio(YAML::Emitter& e, const RadioConfig& r) {
  e << YAML::Key << "radio" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "tx_power_dbm" << YAML::Value << r.tx_power_dbm;
  e << YAML::Key << "tx_gain_db" << YAML::Value << r.tx_gain_db;
  e << YAML::Key << "rx_gain_db" << YAML::Value << r.rx_gain_db;
  e << YAML::Key << "cca_dbm" << YAML::Value << r.cca_dbm;
  e << YAML::Key << "capture_effect_db" << YAML::Value << r.capture_effect_db;
  e << YAML::Key << "noise_dbm" << YAML::Value << r.noise_dbm;
  e << YAML::Key << "bonding_loss_db" << YAML::Value << r.bonding_loss_db;
  e << YAML::Key << "adjacent_leakage_db" << YAML::Value << r.adjacent_leakage_db;
  e << YAML::Key << "break_distance_m" << YAML::Value << r.break_distance_m;
  e << YAML::EndMap;
}

inline void emit_phy(YAML::Emitter& e, const PhyParams& p) {
  using yaml::to_us;
  e << YAML::Key << "phy" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "empty_slot_us" << YAML::Value << to_us(p.empty_slot);
  e << YAML::Key << "sifs_us" << YAML::Value << to_us(p.sifs);
  e << YAML::Key << "difs_us" << YAML::Value << to_us(p.difs);
  e << YAML::Key << "pifs_us" << YAML::Value << to_us(p.pifs);
  e << YAML::Key << "legacy_preamble_us" << YAML::Value << to_us(p.legacy_preamble);
  e << YAML::Key << "he_su_preamble_us" << YAML::Value << to_us(p.he_su_preamble);
  e << YAML::Key << "legacy_symbol_us" << YAML::Value << to_us(p.legacy_symbol);
  e << YAML::Key << "he_symbol_us" << YAML::Value << to_us(p.he_symbol);
  e << YAML::Key << "frame_bits" << YAML::Value << p.frame_bits;
  e << YAML::Key << "frames_per_ampdu" << YAML::Value << p.frames_per_ampdu;
  e << YAML::Key << "block_ack_bits" << YAML::Value << p.block_ack_bits;
  e << YAML::Key << "rts_bits" << YAML::Value << p.rts_bits;
  e << YAML::Key << "cts_bits" << YAML::Value << p.cts_bits;
  e << YAML::Key << "service_field_bits" << YAML::Value << p.service_field_bits;
  e << YAML::Key << "mpdu_delimiter_bits" << YAML::Value << p.mpdu_delimiter_bits;
  e << YAML::Key << "mac_header_bits" << YAML::Value << p.mac_header_bits;
  e << YAML::Key << "tail_bits" << YAML::Value << p.tail_bits;
  e << YAML::Key << "legacy_bits_per_symbol" << YAML::Value << p.legacy_bits_per_symbol;
  e << YAML::Key << "cw_min" << YAML::Value << p.cw_min;
  e << YAML::Key << "backoff_stages" << YAML::Value << p.backoff_stages;
  e << YAML::Key << "packet_error_rate" << YAML::Value << p.packet_error_rate;
  e << YAML::EndMap;
}

inline void emit_solver(YAML::Emitter& e, const SolverOptions& s) {
  e << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "residual_tolerance" << YAML::Value << s.residual_tolerance;
  e << YAML::Key << "dense_threshold" << YAML::Value << s.dense_threshold;
  e << YAML::Key << "state_cap" << YAML::Value << s.state_cap;
  e << YAML::EndMap;
}

// Full-precision YAML; parse_scenario_string(emit_scenario(c)) == c. An
// inline MCS table cannot be expressed, so a non-default table must come
// from a file.
[[nodiscard]] inline std::string emit_scenario(const ScenarioConfig& cfg) {
  if (!cfg.mcs_table_file && !(cfg.mcs_table == default_mcs_table()))
    throw ConfigError("emit_scenario: a custom MCS table needs mcs_table_file");
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << cfg.name;
  e << YAML::Key << "n_sys" << YAML::Value << cfg.n_sys;
  emit_radio(e, cfg.radio);
  emit_phy(e, cfg.phy);
  if (cfg.mcs_table_file) e << YAML::Key << "mcs_table_file" << YAML::Value << *cfg.mcs_table_file;
  emit_solver(e, cfg.solver);
  if (cfg.output.csv_path || cfg.output.ctmn_dump_path) {
    e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    if (cfg.output.csv_path) e << YAML::Key << "csv" << YAML::Value << *cfg.output.csv_path;
    if (cfg.output.ctmn_dump_path) e << YAML::Key << "ctmn_dump" << YAML::Value << *cfg.output.ctmn_dump_path;
    e << YAML::EndMap;
  }
  e << YAML::Key << "wlans" << YAML::Value << YAML::BeginSeq;
  for (const auto& w : cfg.wlans) {
    e << YAML::BeginMap;
    e << YAML::Key << "name" << YAML::Value << w.name;
    e << YAML::Key << "ap" << YAML::Value;
    yaml::emit_position(e, w.ap);
    e << YAML::Key << "stas" << YAML::Value << YAML::BeginSeq;
    for (const auto& s : w.stas) yaml::emit_position(e, s);
    e << YAML::EndSeq;
    e << YAML::Key << "channel" << YAML::Value << YAML::Flow << YAML::BeginSeq << w.allocation.channel.lo
      << w.allocation.channel.hi << YAML::EndSeq;
    e << YAML::Key << "primary" << YAML::Value << w.allocation.primary;
    e << YAML::Key << "policy" << YAML::Value << std::string(to_string(w.policy));
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;
  e << YAML::EndMap;
  if (!e.good()) throw ModelError(std::string("emit_scenario: ") + e.GetLastError());
  return std::string(e.c_str()) + "\n";
}

// Deployment section keys, shared with sweep specs (which omit seed/wlans).
inline void read_deployment_fields(const YAML::Node& n, const std::string& path, DeploymentSpec& d,
                                   bool allow_seed_and_count) {
  std::set<std::string> keys{"name",          "map",    "min_ap_distance_m", "sta_distance_m",
                             "stas_per_wlan", "n_sys",  "widths",            "policy",
                             "policy_overrides", "max_attempts"};
  if (allow_seed_and_count) {
    keys.insert("seed");
    keys.insert("wlans");
  }
  yaml::check_keys(n, path, keys);
  yaml::read(n, path, "name", d.name);
  if (n["map"]) {
    const auto m = yaml::read_numbers(n["map"], yaml::join(path, "map"));
    if (m.size() != 2) throw ConfigError(yaml::join(path, "map") + ": expected [width, height]");
    d.map_width_m = m[0];
    d.map_height_m = m[1];
  }
  yaml::read(n, path, "min_ap_distance_m", d.min_ap_distance_m);
  if (n["sta_distance_m"]) {
    const auto r = yaml::read_numbers(n["sta_distance_m"], yaml::join(path, "sta_distance_m"));
    if (r.size() != 2) throw ConfigError(yaml::join(path, "sta_distance_m") + ": expected [min, max]");
    d.sta_min_distance_m = r[0];
    d.sta_max_distance_m = r[1];
  }
  yaml::read(n, path, "stas_per_wlan", d.stas_per_wlan);
  yaml::read(n, path, "n_sys", d.n_sys);
  if (n["widths"]) {
    d.widths.clear();
    for (double w : yaml::read_numbers(n["widths"], yaml::join(path, "widths"))) {
      if (w != std::floor(w)) throw ConfigError(yaml::join(path, "widths") + ": expected integers");
      d.widths.push_back(static_cast<int>(w));
    }
  }
  if (n["policy"]) {
    const auto p = yaml::as<std::string>(n["policy"], yaml::join(path, "policy"));
    if (p == "random" || p == "RANDOM") {
      d.assignment = PolicyAssignment::UniformRandom;
    } else {
      d.assignment = PolicyAssignment::Fixed;
      d.policy = yaml::read_policy(n["policy"], yaml::join(path, "policy"));
    }
  }
  if (const auto o = n["policy_overrides"]) {
    const auto opath = yaml::join(path, "policy_overrides");
    if (!o.IsSequence()) throw ConfigError(opath + ": expected a list");
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (o[i].IsNull())
        d.overrides.emplace_back();
      else
        d.overrides.emplace_back(yaml::read_policy(o[i], opath + "[" + std::to_string(i) + "]"));
    }
  }
  yaml::read(n, path, "max_attempts", d.max_attempts);
  if (allow_seed_and_count) {
    if (!n["seed"]) throw ConfigError(yaml::join(path, "seed") + ": required");
    d.seed = yaml::as<std::uint64_t>(n["seed"], yaml::join(path, "seed"));
    yaml::read(n, path, "wlans", d.wlan_count);
  }
}

// Shared parameter sections (radio, phy, solver) at the document root.
inline void read_shared_sections(const YAML::Node& root, DeploymentSpec& d) {
  if (root["radio"]) read_radio(root["radio"], "radio", d.radio);
  if (root["phy"]) read_phy(root["phy"], "phy", d.phy);
  if (root["solver"]) read_solver(root["solver"], "solver", d.solver);
}

[[nodiscard]] inline DeploymentSpec parse_deployment_node(const YAML::Node& root) {
  yaml::check_keys(root, "", {"deployment", "radio", "phy", "solver"});
  if (!root["deployment"]) throw ConfigError("deployment: required");
  DeploymentSpec d;
  read_deployment_fields(root["deployment"], "deployment", d, true);
  read_shared_sections(root, d);
  d.validate();
  return d;
}

[[nodiscard]] inline DeploymentSpec parse_deployment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open deployment spec");
  try {
    return parse_deployment_node(load_yaml(in));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace dcb::io
