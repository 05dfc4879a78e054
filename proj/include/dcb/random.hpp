#pragma once

// Portable seeded randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard. The std distributions are not (their
// algorithms are implementation-defined), so the conversions below are
// spelled out to keep generated deployments identical across platforms.

#include <cmath>
#include <cstdint>
#include <random>

namespace dcb {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on [lo, hi], by rejection to avoid modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Exponential with the given rate; uses 1 - u so the log argument is > 0.
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dcb
