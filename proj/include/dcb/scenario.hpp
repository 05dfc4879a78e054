#pragma once

// Scenario description: channelization, radio and PHY parameters and the
// WLANs (one AP plus its STAs each).

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcb/channelization.hpp"
#include "dcb/error.hpp"
#include "dcb/phy_timing.hpp"
#include "dcb/policy.hpp"
#include "dcb/propagation.hpp"

namespace dcb {

struct Wlan {
  std::string name;
  Position ap;
  std::vector<Position> stas;
  Allocation allocation;
  Policy policy = Policy::AlwaysMax;

  friend bool operator==(const Wlan&, const Wlan&) = default;
};

struct SolverOptions {
  // Accepted residual: max|pi Q| <= residual_tolerance * max|Q|.
  double residual_tolerance = 1e-9;
  // Dense direct solve up to this many feasible states, sparse LU above.
  std::size_t dense_threshold = 5000;
  // Upper bound on the size of the global state space.
  std::size_t state_cap = 1'000'000;

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

struct OutputOptions {
  std::optional<std::string> csv_path;
  std::optional<std::string> ctmn_dump_path;

  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  int n_sys = 8;
  RadioConfig radio;
  PhyParams phy;
  // Set when the table was loaded from a file; the path is kept for re-emission.
  std::optional<std::string> mcs_table_file;
  McsTable mcs_table = default_mcs_table();
  std::vector<Wlan> wlans;
  SolverOptions solver;
  OutputOptions output;

  [[nodiscard]] ChannelizationScheme scheme() const { return ChannelizationScheme(n_sys); }

  // Throws ConfigError naming the offending field.
  void validate() const {
    if (!is_power_of_two(n_sys) || n_sys > kMaxBasicChannels)
      throw ConfigError("n_sys: must be a power of two in [1, 64], got " + std::to_string(n_sys));
    radio.validate();
    phy.validate();
    mcs_table.validate();
    if (solver.residual_tolerance <= 0) throw ConfigError("solver.residual_tolerance: must be > 0");
    if (solver.state_cap == 0) throw ConfigError("solver.state_cap: must be > 0");
    const auto sch = scheme();
    std::set<std::string> names;
    for (std::size_t i = 0; i < wlans.size(); ++i) {
      const auto& w = wlans[i];
      const std::string f = "wlans[" + std::to_string(i) + "]";
      if (w.name.empty()) throw ConfigError(f + ".name: must not be empty");
      if (!names.insert(w.name).second) throw ConfigError(f + ".name: duplicate name '" + w.name + "'");
      validate_allocation(w.allocation, sch, f);
      if (w.allocation.channel.width() > kSupportedWidths.back())
        throw ConfigError(f + ".channel: widths above 160 MHz are not supported");
      if (w.stas.empty()) throw ConfigError(f + ".stas: at least one STA is required");
      for (std::size_t j = 0; j < w.stas.size(); ++j)
        if (!(distance(w.stas[j], w.ap) > 0))
          throw ConfigError(f + ".stas[" + std::to_string(j) + "]: coincides with the AP");
    }
    // Path loss is undefined at zero distance, and every AP is heard at every
    // other AP and STA.
    for (std::size_t i = 0; i < wlans.size(); ++i)
      for (std::size_t k = 0; k < wlans.size(); ++k) {
        if (i == k) continue;
        const std::string f = "wlans[" + std::to_string(k) + "]";
        if (!(distance(wlans[i].ap, wlans[k].ap) > 0))
          throw ConfigError(f + ".ap: coincides with the AP of " + wlans[i].name);
        for (std::size_t j = 0; j < wlans[k].stas.size(); ++j)
          if (!(distance(wlans[i].ap, wlans[k].stas[j]) > 0))
            throw ConfigError(f + ".stas[" + std::to_string(j) + "]: coincides with the AP of " + wlans[i].name);
      }
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Isolated-link budget for one candidate transmission channel of a WLAN.
struct WidthLink {
  Channel channel;
  // Rate used by the AP on this channel: the lowest MCS among decodable STAs.
  std::optional<McsEntry> mcs;
  // Per STA: per-channel power reaches CCA and some MCS meets its sensitivity.
  std::vector<bool> sta_decodable;
  // mu for this width; uses the lowest table entry when no STA is decodable.
  double departure_rate = 0.0;
};

struct LinkSetup {
  std::vector<WidthLink> by_candidate;  // aligned with candidate_tx_channels
  std::vector<std::string> diagnostics;
};

// MCS selection happens once, from interference-free link budgets, and stays
// fixed for the whole analysis.
[[nodiscard]] inline LinkSetup setup_links(const Wlan& wlan, const ScenarioConfig& cfg) {
  LinkSetup out;
  const auto sch = cfg.scheme();
  for (const auto& ch : candidate_tx_channels(wlan.allocation, sch)) {
    WidthLink link{ch, std::nullopt, {}, 0.0};
    for (const auto& sta : wlan.stas) {
      const PowerMap rx = received_power_map(wlan.ap, sta, ch, cfg.radio, cfg.n_sys);
      const bool reaches_cca = rx.dbm(ch.lo) >= cfg.radio.cca_dbm;
      const auto mcs = select_mcs(mw_to_dbm(rx.total(ch)), ch.width(), cfg.mcs_table);
      const bool ok = reaches_cca && mcs.has_value();
      link.sta_decodable.push_back(ok);
      if (ok && (!link.mcs || mcs->index < link.mcs->index)) link.mcs = mcs;
    }
    if (!link.mcs)
      out.diagnostics.push_back("link budget failure: WLAN " + wlan.name + " cannot reach any STA on " +
                                to_string(ch) + "; transmissions there deliver no data");
    link.departure_rate =
        departure_rate(link.mcs ? *link.mcs : cfg.mcs_table.lowest(), ch.width(), cfg.phy);
    out.by_candidate.push_back(std::move(link));
  }
  return out;
}

}  // namespace dcb
