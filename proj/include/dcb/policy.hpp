#pragma once

// Transmission-channel selection at backoff expiry: OP, SCB, AM and PU.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "dcb/channelization.hpp"
#include "dcb/error.hpp"

namespace dcb {

enum class Policy {
  OnlyPrimary,           // OP
  StaticBonding,         // SCB
  AlwaysMax,             // AM
  ProbabilisticUniform,  // PU
};

inline constexpr std::array<Policy, 4> kAllPolicies{Policy::OnlyPrimary, Policy::StaticBonding,
                                                    Policy::AlwaysMax, Policy::ProbabilisticUniform};

[[nodiscard]] constexpr std::string_view to_string(Policy p) noexcept {
  switch (p) {
    case Policy::OnlyPrimary: return "OP";
    case Policy::StaticBonding: return "SCB";
    case Policy::AlwaysMax: return "AM";
    case Policy::ProbabilisticUniform: return "PU";
  }
  return "?";
}

// Case-insensitive.
[[nodiscard]] inline Policy parse_policy(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Policy p : kAllPolicies)
    if (upper == to_string(p)) return p;
  throw ConfigError("unknown DCB policy '" + std::string(text) + "' (expected OP, SCB, AM or PU)");
}

// Exact rational probability.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  [[nodiscard]] static Fraction of(std::int64_t n, std::int64_t d) {
    const auto g = std::gcd(n, d);
    return {n / g, d / g};
  }
  [[nodiscard]] double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct ChannelOption {
  Channel channel;
  Fraction probability;

  friend bool operator==(const ChannelOption&, const ChannelOption&) = default;
};

// Empty when the WLAN cannot transmit (backoff frozen).
using ChannelChoice = std::vector<ChannelOption>;

// Applies `policy` to the channels found free at backoff expiry. Only
// candidates that are entirely free qualify; bits of `free` outside the
// allocation are ignored.
[[nodiscard]] inline ChannelChoice select_tx_channels(Policy policy, const Allocation& alloc,
                                                      const ChannelSet& free,
                                                      const ChannelizationScheme& scheme) {
  const ChannelSet usable = free & ChannelSet::of(alloc.channel);
  if (!usable.contains(alloc.primary)) return {};

  std::vector<Channel> qualifying;
  for (const auto& c : candidate_tx_channels(alloc, scheme))
    if (usable.contains_all(c)) qualifying.push_back(c);
  // The primary alone is always a candidate, so `qualifying` is nonempty here.

  switch (policy) {
    case Policy::OnlyPrimary:
      return {{qualifying.front(), {1, 1}}};
    case Policy::StaticBonding:
      if (qualifying.back() == alloc.channel) return {{alloc.channel, {1, 1}}};
      return {};
    case Policy::AlwaysMax:
      return {{qualifying.back(), {1, 1}}};
    case Policy::ProbabilisticUniform: {
      ChannelChoice out;
      const auto k = static_cast<std::int64_t>(qualifying.size());
      for (const auto& c : qualifying) out.push_back({c, Fraction::of(1, k)});
      return out;
    }
  }
  return {};
}

}  // namespace dcb
