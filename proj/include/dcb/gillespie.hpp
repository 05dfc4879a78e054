#pragma once

// Stochastic simulation of the jump process defined by a rate matrix. Used as
// an independent check on the equilibrium solver.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dcb/ctmn.hpp"
#include "dcb/error.hpp"
#include "dcb/random.hpp"

namespace dcb {

struct OccupancySample {
  // Fraction of the horizon spent in each state.
  std::vector<double> occupancy;
  std::size_t jumps = 0;
};

[[nodiscard]] inline OccupancySample gillespie_sample(const RateMatrix& q, double horizon_s,
                                                      std::uint64_t seed, std::size_t start = 0) {
  if (!(horizon_s > 0)) throw DomainError("gillespie_sample: horizon must be > 0");
  if (start >= q.size()) throw DomainError("gillespie_sample: start state out of range");
  const auto adj = q.adjacency();
  const auto& tr = q.transitions();
  Rng rng(seed);

  OccupancySample out;
  out.occupancy.assign(q.size(), 0.0);
  std::size_t s = start;
  double t = 0.0;
  while (t < horizon_s) {
    const double exit = -q.diagonal(s);
    if (!(exit > 0)) {
      out.occupancy[s] += horizon_s - t;
      break;
    }
    const double hold = rng.exponential(exit);
    if (t + hold >= horizon_s) {
      out.occupancy[s] += horizon_s - t;
      break;
    }
    out.occupancy[s] += hold;
    t += hold;
    double pick = rng.uniform01() * exit;
    std::size_t next = tr[adj[s].back()].to;
    for (std::size_t i : adj[s]) {
      pick -= tr[i].rate;
      if (pick < 0) {
        next = tr[i].to;
        break;
      }
    }
    s = next;
    ++out.jumps;
  }
  for (double& o : out.occupancy) o /= horizon_s;
  return out;
}

}  // namespace dcb
