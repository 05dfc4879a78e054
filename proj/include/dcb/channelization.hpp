#pragma once

// Basic channels, bonded channels under the 11ac/ax channelization scheme and
// per-WLAN allocations. Basic channels are 1-based integer indices; frequency
// arithmetic never happens here.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "dcb/error.hpp"

namespace dcb {

inline constexpr int kBasicChannelMhz = 20;
inline constexpr int kMaxBasicChannels = 64;

// Contiguous run [lo, hi] of basic channels.
struct Channel {
  int lo = 1;
  int hi = 1;

  [[nodiscard]] constexpr int width() const noexcept { return hi - lo + 1; }
  [[nodiscard]] constexpr int bandwidth_mhz() const noexcept { return width() * kBasicChannelMhz; }
  [[nodiscard]] constexpr bool contains(int c) const noexcept { return lo <= c && c <= hi; }
  [[nodiscard]] constexpr bool contains(const Channel& o) const noexcept {
    return lo <= o.lo && o.hi <= hi;
  }

  friend constexpr bool operator==(const Channel&, const Channel&) = default;
};

// Canonical order: ascending width, then ascending lo.
struct CanonicalChannelLess {
  constexpr bool operator()(const Channel& a, const Channel& b) const noexcept {
    return a.width() != b.width() ? a.width() < b.width() : a.lo < b.lo;
  }
};

inline std::string to_string(const Channel& c) {
  return "[" + std::to_string(c.lo) + "," + std::to_string(c.hi) + "]";
}

[[nodiscard]] constexpr bool channels_overlap(const Channel& a, const Channel& b) noexcept {
  return a.lo <= b.hi && b.lo <= a.hi;
}

// Set of basic channels, stored as a bitmask (bit c-1 for channel c).
class ChannelSet {
 public:
  constexpr ChannelSet() = default;

  static constexpr ChannelSet of(const Channel& c) noexcept {
    ChannelSet s;
    for (int i = c.lo; i <= c.hi; ++i) s.insert(i);
    return s;
  }

  constexpr void insert(int c) noexcept { bits_ |= bit(c); }
  constexpr void erase(int c) noexcept { bits_ &= ~bit(c); }
  [[nodiscard]] constexpr bool contains(int c) const noexcept { return (bits_ & bit(c)) != 0; }
  [[nodiscard]] constexpr bool contains_all(const Channel& c) const noexcept {
    const auto need = of(c).bits_;
    return (bits_ & need) == need;
  }
  [[nodiscard]] constexpr bool empty() const noexcept { return bits_ == 0; }
  [[nodiscard]] constexpr int size() const noexcept { return std::popcount(bits_); }
  [[nodiscard]] constexpr std::uint64_t bits() const noexcept { return bits_; }

  [[nodiscard]] constexpr ChannelSet operator&(const ChannelSet& o) const noexcept {
    ChannelSet s;
    s.bits_ = bits_ & o.bits_;
    return s;
  }
  [[nodiscard]] constexpr bool is_subset_of(const ChannelSet& o) const noexcept {
    return (bits_ & ~o.bits_) == 0;
  }

  [[nodiscard]] std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int c = 1; c <= kMaxBasicChannels; ++c)
      if (contains(c)) out.push_back(c);
    return out;
  }

  friend constexpr bool operator==(const ChannelSet&, const ChannelSet&) = default;

 private:
  static constexpr std::uint64_t bit(int c) noexcept {
    return (c >= 1 && c <= kMaxBasicChannels) ? (std::uint64_t{1} << (c - 1)) : 0;
  }
  std::uint64_t bits_ = 0;
};

[[nodiscard]] constexpr bool is_power_of_two(int v) noexcept {
  return v > 0 && std::has_single_bit(static_cast<unsigned>(v));
}

// Every aligned power-of-two block inside [1, n_sys], ascending width then lo.
[[nodiscard]] inline std::vector<Channel> enumerate_valid_channels(int n_sys) {
  if (!is_power_of_two(n_sys) || n_sys > kMaxBasicChannels)
    throw ConfigError("n_sys must be a power of two in [1, " + std::to_string(kMaxBasicChannels) +
                      "], got " + std::to_string(n_sys));
  std::vector<Channel> out;
  out.reserve(static_cast<std::size_t>(2 * n_sys - 1));
  for (int w = 1; w <= n_sys; w *= 2)
    for (int lo = 1; lo + w - 1 <= n_sys; lo += w) out.push_back({lo, lo + w - 1});
  return out;
}

class ChannelizationScheme {
 public:
  explicit ChannelizationScheme(int n_sys) : n_sys_(n_sys), valid_(enumerate_valid_channels(n_sys)) {}

  [[nodiscard]] int n_sys() const noexcept { return n_sys_; }
  [[nodiscard]] const std::vector<Channel>& valid_set() const noexcept { return valid_; }

  [[nodiscard]] bool is_valid(const Channel& c) const noexcept {
    return c.lo >= 1 && c.hi <= n_sys_ && c.lo <= c.hi && is_power_of_two(c.width()) &&
           (c.lo - 1) % c.width() == 0;
  }

 private:
  int n_sys_;
  std::vector<Channel> valid_;
};

// Allocated channel C_w plus primary p_w.
struct Allocation {
  Channel channel;
  int primary = 1;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Throws ConfigError naming `field` when the allocation is not usable.
inline void validate_allocation(const Allocation& a, const ChannelizationScheme& scheme,
                                const std::string& field = "allocation") {
  if (!scheme.is_valid(a.channel))
    throw ConfigError(field + ".channel: " + to_string(a.channel) +
                      " is not an aligned power-of-two block within [1," +
                      std::to_string(scheme.n_sys()) + "]");
  if (!a.channel.contains(a.primary))
    throw ConfigError(field + ".primary: " + std::to_string(a.primary) + " is not inside " +
                      to_string(a.channel));
}

// Valid channels that lie inside the allocation and contain the primary,
// ascending width. The candidates are nested, one per power-of-two width.
[[nodiscard]] inline std::vector<Channel> candidate_tx_channels(const Allocation& alloc,
                                                                const ChannelizationScheme& scheme) {
  std::vector<Channel> out;
  for (int w = 1; w <= alloc.channel.width(); w *= 2) {
    const int lo = ((alloc.primary - 1) / w) * w + 1;
    const Channel c{lo, lo + w - 1};
    if (scheme.is_valid(c) && alloc.channel.contains(c)) out.push_back(c);
  }
  return out;
}

}  // namespace dcb
