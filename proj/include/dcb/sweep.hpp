#pragma once

// Policy sweeps over fixed scenarios or seeded deployments. Evaluations run on
// a worker pool; rows are sorted by (scenario, wlan_count, seed, policy) so
// the output does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "dcb/deployment.hpp"
#include "dcb/metrics.hpp"
#include "dcb/report_csv.hpp"

namespace dcb {

enum class SweepMode {
  Uniform,       // every WLAN gets the same policy
  Combinations,  // every per-WLAN assignment over the policy list
};

struct SweepSpec {
  std::string name = "sweep";
  std::vector<Policy> policies{kAllPolicies.begin(), kAllPolicies.end()};
  SweepMode mode = SweepMode::Uniform;
  // Either fixed scenarios...
  std::vector<ScenarioConfig> scenarios;
  // ...or deployments for every (wlan_count, seed) pair.
  std::optional<DeploymentSpec> deployment;
  std::vector<int> wlan_counts;
  std::vector<std::uint64_t> seeds;

  void validate() const {
    if (policies.empty()) throw ConfigError("sweep.policies: must not be empty");
    if (scenarios.empty() == !deployment.has_value())
      throw ConfigError("sweep: give exactly one of 'scenarios' or 'deployment'");
    if (deployment && (wlan_counts.empty() || seeds.empty()))
      throw ConfigError("sweep: deployment sweeps need nonempty 'wlan_counts' and 'seeds'");
    for (int m : wlan_counts)
      if (m < 0) throw ConfigError("sweep.wlan_counts: must be >= 0");
  }
};

// Worker count: explicit value, else DCB_WORKERS, else hardware concurrency.
[[nodiscard]] inline unsigned resolve_workers(std::optional<unsigned> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("DCB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw ConfigError("DCB_WORKERS: expected a positive integer, got '" + std::string(env) + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

struct SweepJob {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::size_t wlan_count = 0;
  std::vector<Policy> assignment;
  const ScenarioConfig* fixed = nullptr;
  std::optional<DeploymentSpec> deployment;

  [[nodiscard]] auto key() const {
    std::vector<int> ordinals;
    for (Policy p : assignment) ordinals.push_back(static_cast<int>(p));
    return std::make_tuple(scenario, wlan_count, seed.value_or(0), seed.has_value(), ordinals);
  }
};

inline std::string assignment_label(const std::vector<Policy>& a) {
  std::string s;
  for (Policy p : a) {
    if (!s.empty()) s += '-';
    s += to_string(p);
  }
  return s;
}

inline std::vector<std::vector<Policy>> assignments(const SweepSpec& spec, std::size_t m) {
  std::vector<std::vector<Policy>> out;
  if (spec.mode == SweepMode::Uniform || m == 0) {
    for (Policy p : spec.policies) out.emplace_back(m, p);
    return out;
  }
  constexpr std::size_t kMaxCombinations = 100000;
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= spec.policies.size();
    if (total > kMaxCombinations)
      throw ConfigError("sweep: too many policy combinations for " + std::to_string(m) + " WLANs");
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<Policy> a(m);
    std::size_t r = idx;
    for (std::size_t w = m; w-- > 0;) {
      a[w] = spec.policies[r % spec.policies.size()];
      r /= spec.policies.size();
    }
    out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<CsvRow> run_job(const SweepJob& job) {
  const std::string label = assignment_label(job.assignment);
  try {
    ScenarioConfig cfg;
    if (job.fixed) {
      cfg = *job.fixed;
    } else {
      DeploymentSpec d = *job.deployment;
      d.overrides.clear();
      d.assignment = PolicyAssignment::Fixed;
      cfg = generate_deployment(d);
    }
    for (std::size_t w = 0; w < cfg.wlans.size(); ++w) cfg.wlans[w].policy = job.assignment[w];
    return report_rows(evaluate(cfg), job.seed);
  } catch (const std::exception& e) {
    return {error_row(job.scenario, job.seed, job.wlan_count, label, e.what())};
  }
}

}  // namespace detail

[[nodiscard]] inline std::vector<CsvRow> run_sweep(const SweepSpec& spec, unsigned workers = 1) {
  spec.validate();
  std::vector<detail::SweepJob> jobs;
  for (const auto& sc : spec.scenarios)
    for (auto& a : detail::assignments(spec, sc.wlans.size()))
      jobs.push_back({sc.name, std::nullopt, sc.wlans.size(), std::move(a), &sc, std::nullopt});
  if (spec.deployment) {
    for (int m : spec.wlan_counts)
      for (std::uint64_t seed : spec.seeds)
        for (auto& a : detail::assignments(spec, static_cast<std::size_t>(m))) {
          DeploymentSpec d = *spec.deployment;
          d.wlan_count = m;
          d.seed = seed;
          jobs.push_back({d.name, seed, static_cast<std::size_t>(m), std::move(a), nullptr, d});
        }
  }
  std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });

  std::vector<std::vector<CsvRow>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = detail::run_job(jobs[i]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<CsvRow> rows;
  for (auto& r : results)
    for (auto& row : r) rows.push_back(std::move(row));
  return rows;
}

}  // namespace dcb
