#pragma once

// Throughput, airtime, bandwidth usage and fairness from a solved CTMN, plus
// the end-to-end evaluation pipeline.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dcb/ctmn.hpp"
#include "dcb/scenario.hpp"
#include "dcb/solver.hpp"

namespace dcb {

struct WlanReport {
  std::string name;
  Policy policy = Policy::AlwaysMax;
  double throughput_bps = 0.0;
  double airtime = 0.0;
  double bandwidth_mhz = 0.0;
  // Per feasible state: share of the WLAN's STAs above the capture threshold
  // (0 when inactive).
  std::vector<double> capture_share;

  [[nodiscard]] double throughput_mbps() const noexcept { return throughput_bps / 1e6; }
};

struct Fairness {
  double jain = 1.0;
  // Sum of log10 of per-WLAN throughput in Mbps; -inf when any WLAN starves.
  double proportional = 0.0;
  std::vector<std::string> starved;
};

struct ScenarioReport {
  std::string name;
  std::vector<WlanReport> wlans;
  double total_throughput_bps = 0.0;
  Fairness fairness;
  std::size_t global_states = 1;
  std::size_t feasible_states = 1;
  std::vector<double> pi;
  std::vector<std::string> state_labels;
  std::vector<std::string> diagnostics;

  // "AM-PU-AM" style label of the policy assignment.
  [[nodiscard]] std::string policy_label() const {
    std::string s;
    for (const auto& w : wlans) {
      if (!s.empty()) s += '-';
      s += to_string(w.policy);
    }
    return s;
  }
};

// Gamma_w = E[L] * sum_s share_w(s) * mu_w(s) * pi_s * (1 - eta).
[[nodiscard]] inline std::vector<WlanReport> throughput(const CtmnModel& model, const Ctmn& ctmn,
                                                        const std::vector<double>& pi) {
  const double bits = static_cast<double>(model.phy().useful_bits_per_exchange());
  const double success = 1.0 - model.phy().packet_error_rate;
  std::vector<WlanReport> out;
  for (std::size_t w = 0; w < model.wlan_count(); ++w) {
    WlanReport r;
    r.name = model.wlan(w).name;
    r.policy = model.wlan(w).policy;
    r.capture_share.assign(ctmn.feasible.size(), 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k < ctmn.feasible.size(); ++k) {
      const auto& s = ctmn.feasible[k];
      if (!s.active(w)) continue;
      r.capture_share[k] = model.capture_share(s, w);
      acc += r.capture_share[k] * model.departure_rate(s, w) * pi[k];
    }
    r.throughput_bps = bits * acc * success;
    out.push_back(std::move(r));
  }
  return out;
}

inline void airtime_and_bandwidth(const CtmnModel& model, const Ctmn& ctmn, const std::vector<double>& pi,
                                  std::vector<WlanReport>& reports) {
  for (std::size_t w = 0; w < model.wlan_count(); ++w) {
    double air = 0.0, bw = 0.0;
    for (std::size_t k = 0; k < ctmn.feasible.size(); ++k) {
      const auto& s = ctmn.feasible[k];
      if (!s.active(w)) continue;
      air += pi[k];
      bw += pi[k] * model.channel(s, w).bandwidth_mhz();
    }
    reports.at(w).airtime = air;
    reports.at(w).bandwidth_mhz = bw;
  }
}

// Jain's index over the raw values; all-zero input counts as perfectly even.
[[nodiscard]] inline double jain_index(const std::vector<double>& x) {
  if (x.empty()) return 1.0;
  double s = 0.0, s2 = 0.0;
  for (double v : x) {
    s += v;
    s2 += v * v;
  }
  if (s2 == 0.0) return 1.0;
  return s * s / (static_cast<double>(x.size()) * s2);
}

[[nodiscard]] inline Fairness fairness(const std::vector<WlanReport>& reports) {
  Fairness f;
  std::vector<double> mbps;
  for (const auto& r : reports) {
    mbps.push_back(r.throughput_mbps());
    if (r.throughput_bps > 0)
      f.proportional += std::log10(r.throughput_mbps());
    else
      f.starved.push_back(r.name);
  }
  if (!f.starved.empty()) f.proportional = -std::numeric_limits<double>::infinity();
  f.jain = jain_index(mbps);
  return f;
}

struct Analysis {
  CtmnModel model;
  Ctmn ctmn;
  Stationary stationary;
  ScenarioReport report;
};

// Link setup, exploration, solve and metrics for one scenario.
[[nodiscard]] inline Analysis analyze(const ScenarioConfig& cfg) {
  CtmnModel model(cfg);
  Ctmn ctmn = explore(model);
  Stationary st = solve_equilibrium(ctmn.q, {cfg.solver.residual_tolerance, cfg.solver.dense_threshold});

  ScenarioReport rep;
  rep.name = cfg.name;
  rep.wlans = throughput(model, ctmn, st.pi);
  airtime_and_bandwidth(model, ctmn, st.pi, rep.wlans);
  for (const auto& w : rep.wlans) rep.total_throughput_bps += w.throughput_bps;
  rep.fairness = fairness(rep.wlans);
  rep.global_states = ctmn.global.size();
  rep.feasible_states = ctmn.feasible.size();
  rep.pi = st.pi;
  for (const auto& s : ctmn.feasible.states()) rep.state_labels.push_back(model.label(s));
  rep.diagnostics = model.diagnostics();
  for (const auto& name : rep.fairness.starved) rep.diagnostics.push_back("starvation: WLAN " + name + " has zero throughput");
  return Analysis{std::move(model), std::move(ctmn), std::move(st), std::move(rep)};
}

[[nodiscard]] inline ScenarioReport evaluate(const ScenarioConfig& cfg) { return analyze(cfg).report; }

}  // namespace dcb
