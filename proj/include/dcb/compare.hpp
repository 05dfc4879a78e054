#pragma once

// AM-versus-PU classification over sweep output: for every (scenario,
// wlan_count, seed) group holding both an all-AM and an all-PU run, compare
// throughput with a margin delta and label the group am_best, pu_best or draw.

#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "dcb/error.hpp"
#include "dcb/report_csv.hpp"

namespace dcb {

enum class Outcome { AmBest, PuBest, Draw };

[[nodiscard]] constexpr const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::AmBest: return "am_best";
    case Outcome::PuBest: return "pu_best";
    case Outcome::Draw: return "draw";
  }
  return "?";
}

[[nodiscard]] inline Outcome classify(double am_mbps, double pu_mbps, double delta_mbps) {
  if (am_mbps - pu_mbps > delta_mbps) return Outcome::AmBest;
  if (pu_mbps - am_mbps > delta_mbps) return Outcome::PuBest;
  return Outcome::Draw;
}

struct Comparison {
  std::string scenario;
  std::string seed;
  std::string wlan_count;
  double am_mbps = 0.0;
  double pu_mbps = 0.0;
  Outcome outcome = Outcome::Draw;
};

struct CompareSummary {
  std::vector<Comparison> rows;
  std::size_t am_best = 0, pu_best = 0, draw = 0;
  std::size_t skipped = 0;  // groups missing a run or with an error
};

// `wlan` empty compares aggregate throughput, otherwise that WLAN's.
[[nodiscard]] inline CompareSummary compare_am_pu(std::istream& csv, double delta_mbps = 0.5,
                                                  const std::string& wlan = {}) {
  if (!(delta_mbps >= 0)) throw ConfigError("compare: delta must be >= 0");
  std::string line;
  if (!std::getline(csv, line) || split_csv_line(line) != split_csv_line(kCsvHeader))
    throw ConfigError("compare: input is not a schema v1 results file");

  using Key = std::tuple<std::string, std::string, std::string>;
  struct Pair {
    std::optional<double> am, pu;
    bool broken = false;
  };
  std::map<Key, Pair> groups;
  std::vector<Key> order;
  std::map<std::string, double> pending;  // wlan -> throughput for the current run

  enum Col { kScenario = 1, kSeed, kCount, kPolicy, kScope, kWlan, kThroughput, kError = 14 };
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 15) throw ConfigError("compare: malformed row: " + line);
    if (f[kScope] == "wlan") {
      pending[f[kWlan]] = f[kThroughput].empty() ? 0.0 : std::stod(f[kThroughput]);
      continue;
    }
    const Key key{f[kScenario], f[kSeed], f[kCount]};
    if (!groups.count(key)) order.push_back(key);
    auto& g = groups[key];
    const auto m = static_cast<std::size_t>(std::stoul(f[kCount]));
    std::string all_am, all_pu;
    for (std::size_t i = 0; i < m; ++i) {
      all_am += i ? "-AM" : "AM";
      all_pu += i ? "-PU" : "PU";
    }
    const bool is_am = f[kPolicy] == all_am, is_pu = f[kPolicy] == all_pu;
    if ((is_am || is_pu) && !f[kError].empty()) g.broken = true;
    if ((is_am || is_pu) && f[kError].empty()) {
      std::optional<double> v;
      if (wlan.empty())
        v = std::stod(f[kThroughput]);
      else if (const auto it = pending.find(wlan); it != pending.end())
        v = it->second;
      if (!v) g.broken = true;
      (is_am ? g.am : g.pu) = v;
    }
    pending.clear();
  }

  CompareSummary out;
  for (const auto& key : order) {
    const auto& g = groups[key];
    if (g.broken || !g.am || !g.pu) {
      ++out.skipped;
      continue;
    }
    Comparison c{std::get<0>(key), std::get<1>(key), std::get<2>(key), *g.am, *g.pu,
                 classify(*g.am, *g.pu, delta_mbps)};
    (c.outcome == Outcome::AmBest ? out.am_best : c.outcome == Outcome::PuBest ? out.pu_best : out.draw)++;
    out.rows.push_back(std::move(c));
  }
  return out;
}

inline void write_comparison(std::ostream& out, const CompareSummary& s) {
  out << "scenario,seed,wlan_count,am_mbps,pu_mbps,difference_mbps,outcome\n";
  for (const auto& c : s.rows)
    out << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{}\n", csv_field(c.scenario), c.seed, c.wlan_count,
                       c.am_mbps, c.pu_mbps, c.am_mbps - c.pu_mbps, to_string(c.outcome));
}

}  // namespace dcb
