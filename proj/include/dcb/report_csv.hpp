#pragma once

// CSV results, schema version 1. One row per WLAN (scope=wlan) followed by
// one aggregate row per scenario (scope=aggregate). Fields that do not apply
// to a scope are left empty. A failed evaluation is a single aggregate row
// with the message in `error`.

#include <fmt/format.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dcb/metrics.hpp"

namespace dcb {

inline constexpr int kCsvSchemaVersion = 1;

inline constexpr const char* kCsvHeader =
    "schema_version,scenario,seed,wlan_count,policy,scope,wlan,throughput_mbps,airtime,bandwidth_mhz,"
    "jain,proportional_fairness,global_states,feasible_states,error";

struct CsvRow {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::size_t wlan_count = 0;
  std::string policy;
  std::string scope;  // "wlan" or "aggregate"
  std::string wlan;
  std::optional<double> throughput_mbps;
  std::optional<double> airtime;
  std::optional<double> bandwidth_mhz;
  std::optional<double> jain;
  std::optional<double> proportional_fairness;
  std::optional<std::size_t> global_states;
  std::optional<std::size_t> feasible_states;
  std::string error;
};

// RFC 4180 quoting, only when needed.
[[nodiscard]] inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

[[nodiscard]] inline std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  if (std::isnan(*v)) return "nan";
  // Avoid "-0.000000".
  const double x = std::abs(*v) < 5e-7 ? 0.0 : *v;
  return fmt::format("{:.6f}", x);
}

[[nodiscard]] inline std::string csv_line(const CsvRow& r) {
  auto count = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", kCsvSchemaVersion, csv_field(r.scenario),
                     r.seed ? std::to_string(*r.seed) : std::string(), r.wlan_count, csv_field(r.policy),
                     r.scope, csv_field(r.wlan), csv_number(r.throughput_mbps), csv_number(r.airtime),
                     csv_number(r.bandwidth_mhz), csv_number(r.jain), csv_number(r.proportional_fairness),
                     count(r.global_states), count(r.feasible_states), csv_field(r.error));
}

[[nodiscard]] inline std::vector<CsvRow> report_rows(const ScenarioReport& rep,
                                                     std::optional<std::uint64_t> seed = std::nullopt) {
  std::vector<CsvRow> rows;
  if (rep.wlans.empty()) return rows;
  const std::string combo = rep.policy_label();
  for (const auto& w : rep.wlans) {
    CsvRow r;
    r.scenario = rep.name;
    r.seed = seed;
    r.wlan_count = rep.wlans.size();
    r.policy = std::string(to_string(w.policy));
    r.scope = "wlan";
    r.wlan = w.name;
    r.throughput_mbps = w.throughput_mbps();
    r.airtime = w.airtime;
    r.bandwidth_mhz = w.bandwidth_mhz;
    rows.push_back(std::move(r));
  }
  CsvRow a;
  a.scenario = rep.name;
  a.seed = seed;
  a.wlan_count = rep.wlans.size();
  a.policy = combo;
  a.scope = "aggregate";
  a.throughput_mbps = rep.total_throughput_bps / 1e6;
  a.jain = rep.fairness.jain;
  a.proportional_fairness = rep.fairness.proportional;
  a.global_states = rep.global_states;
  a.feasible_states = rep.feasible_states;
  rows.push_back(std::move(a));
  return rows;
}

[[nodiscard]] inline CsvRow error_row(const std::string& scenario, std::optional<std::uint64_t> seed,
                                      std::size_t wlan_count, const std::string& policy,
                                      const std::string& message) {
  CsvRow r;
  r.scenario = scenario;
  r.seed = seed;
  r.wlan_count = wlan_count;
  r.policy = policy;
  r.scope = "aggregate";
  r.error = message;
  return r;
}

inline void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

// Splits one CSV record; handles quoted fields without embedded newlines.
[[nodiscard]] inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace dcb
