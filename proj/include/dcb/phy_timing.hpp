#pragma once

// 11ax MCS table, packet durations and the CTMN rate constants.
//
// Durations are exact integer nanoseconds; symbol counts use integer ceiling
// arithmetic on the rational bits-per-symbol so boundary payloads round the
// same way on every platform.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcb/channelization.hpp"
#include "dcb/error.hpp"

namespace dcb {

using Nanoseconds = std::chrono::nanoseconds;
using namespace std::chrono_literals;

// Widths with a defined subcarrier count: 20/40/80/160 MHz.
inline constexpr std::array<int, 4> kSupportedWidths{1, 2, 4, 8};

[[nodiscard]] constexpr int width_slot(int width) {
  switch (width) {
    case 1: return 0;
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default: throw DomainError("unsupported transmission width: " + std::to_string(width));
  }
}

[[nodiscard]] constexpr int subcarriers(int width) {
  constexpr std::array<int, 4> kDataSubcarriers{234, 468, 980, 1960};
  return kDataSubcarriers[static_cast<std::size_t>(width_slot(width))];
}

struct CodingRate {
  int num = 1;
  int den = 2;
  friend bool operator==(const CodingRate&, const CodingRate&) = default;
};

struct McsEntry {
  int index = 0;
  int modulation_bits = 1;
  CodingRate coding_rate;
  // Minimum input sensitivity for 20/40/80/160 MHz.
  std::array<double, 4> min_sensitivity_dbm{};

  [[nodiscard]] double sensitivity_dbm(int width) const {
    return min_sensitivity_dbm[static_cast<std::size_t>(width_slot(width))];
  }
  friend bool operator==(const McsEntry&, const McsEntry&) = default;
};

class McsTable {
 public:
  McsTable() = default;
  explicit McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries)) { validate(); }

  [[nodiscard]] const std::vector<McsEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] const McsEntry& lowest() const {
    if (entries_.empty()) throw ConfigError("mcs_table: empty");
    return entries_.front();
  }

  // Entries sorted by index, rates and sensitivities nondecreasing in index.
  void validate() const {
    if (entries_.empty()) throw ConfigError("mcs_table: at least one entry is required");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      const std::string f = "mcs_table[" + std::to_string(e.index) + "]";
      if (e.modulation_bits <= 0) throw ConfigError(f + ".modulation_bits: must be > 0");
      if (e.coding_rate.num <= 0 || e.coding_rate.den <= 0 || e.coding_rate.num > e.coding_rate.den)
        throw ConfigError(f + ".coding_rate: must be a fraction in (0,1]");
      if (i == 0) continue;
      const auto& p = entries_[i - 1];
      if (e.index <= p.index) throw ConfigError(f + ": indices must be strictly increasing");
      if (static_cast<long long>(e.modulation_bits) * e.coding_rate.num * p.coding_rate.den <
          static_cast<long long>(p.modulation_bits) * p.coding_rate.num * e.coding_rate.den)
        throw ConfigError(f + ": rate must be nondecreasing in index");
      for (std::size_t w = 0; w < 4; ++w)
        if (e.min_sensitivity_dbm[w] < p.min_sensitivity_dbm[w])
          throw ConfigError(f + ": sensitivity must be nondecreasing in index");
    }
  }

  friend bool operator==(const McsTable&, const McsTable&) = default;

 private:
  std::vector<McsEntry> entries_;
};

// 11ax single-stream MCS 0-11 with the amendment's receiver minimum input
// sensitivity (20 MHz values; +3 dB per bandwidth doubling).
[[nodiscard]] inline McsTable default_mcs_table() {
  struct Row {
    int bits;
    CodingRate rate;
    double sens20;
  };
  constexpr std::array<Row, 12> rows{{{1, {1, 2}, -82},
                                      {2, {1, 2}, -79},
                                      {2, {3, 4}, -77},
                                      {4, {1, 2}, -74},
                                      {4, {3, 4}, -70},
                                      {6, {2, 3}, -66},
                                      {6, {3, 4}, -65},
                                      {6, {5, 6}, -64},
                                      {8, {3, 4}, -59},
                                      {8, {5, 6}, -57},
                                      {10, {3, 4}, -54},
                                      {10, {5, 6}, -52}}};
  std::vector<McsEntry> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    entries.push_back({static_cast<int>(i), r.bits, r.rate,
                       {r.sens20, r.sens20 + 3, r.sens20 + 6, r.sens20 + 9}});
  }
  return McsTable(std::move(entries));
}

struct PhyParams {
  Nanoseconds empty_slot = 9us;
  Nanoseconds sifs = 16us;
  Nanoseconds difs = 34us;
  Nanoseconds pifs = 25us;
  Nanoseconds legacy_preamble = 20us;
  Nanoseconds he_su_preamble = 164us;
  Nanoseconds legacy_symbol = 4us;
  Nanoseconds he_symbol = 16us;
  std::int64_t frame_bits = 12000;
  std::int64_t frames_per_ampdu = 64;
  std::int64_t block_ack_bits = 432;
  std::int64_t rts_bits = 160;
  std::int64_t cts_bits = 112;
  std::int64_t service_field_bits = 16;
  std::int64_t mpdu_delimiter_bits = 32;
  std::int64_t mac_header_bits = 320;
  std::int64_t tail_bits = 18;
  std::int64_t legacy_bits_per_symbol = 24;
  int cw_min = 16;
  // Accepted for completeness; the memoryless attempt rate ignores it.
  int backoff_stages = 5;
  double packet_error_rate = 0.1;

  // Useful bits delivered by one successful A-MPDU exchange.
  [[nodiscard]] std::int64_t useful_bits_per_exchange() const noexcept {
    return frames_per_ampdu * frame_bits;
  }

  void validate(const std::string& field = "phy") const {
    auto positive_time = [&](Nanoseconds v, const char* name) {
      if (v <= 0ns) throw ConfigError(field + "." + name + ": must be > 0");
    };
    auto positive = [&](std::int64_t v, const char* name) {
      if (v <= 0) throw ConfigError(field + "." + name + ": must be > 0");
    };
    positive_time(empty_slot, "empty_slot_us");
    positive_time(sifs, "sifs_us");
    positive_time(difs, "difs_us");
    positive_time(pifs, "pifs_us");
    positive_time(legacy_preamble, "legacy_preamble_us");
    positive_time(he_su_preamble, "he_su_preamble_us");
    positive_time(legacy_symbol, "legacy_symbol_us");
    positive_time(he_symbol, "he_symbol_us");
    positive(frame_bits, "frame_bits");
    positive(frames_per_ampdu, "frames_per_ampdu");
    positive(block_ack_bits, "block_ack_bits");
    positive(rts_bits, "rts_bits");
    positive(cts_bits, "cts_bits");
    positive(service_field_bits, "service_field_bits");
    positive(mpdu_delimiter_bits, "mpdu_delimiter_bits");
    positive(mac_header_bits, "mac_header_bits");
    positive(tail_bits, "tail_bits");
    positive(legacy_bits_per_symbol, "legacy_bits_per_symbol");
    if (cw_min < 2) throw ConfigError(field + ".cw_min: must be >= 2");
    if (backoff_stages < 0) throw ConfigError(field + ".backoff_stages: must be >= 0");
    if (!(packet_error_rate >= 0.0 && packet_error_rate < 1.0))
      throw ConfigError(field + ".packet_error_rate: must be in [0,1)");
  }

  friend bool operator==(const PhyParams&, const PhyParams&) = default;
};

[[nodiscard]] inline double bits_per_symbol(const McsEntry& mcs, int width) {
  return static_cast<double>(subcarriers(width)) * mcs.modulation_bits * mcs.coding_rate.num /
         mcs.coding_rate.den;
}

[[nodiscard]] inline double data_rate_bps(const McsEntry& mcs, int width, const PhyParams& phy) {
  return bits_per_symbol(mcs, width) / std::chrono::duration<double>(phy.he_symbol).count();
}

namespace detail {
[[nodiscard]] constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept {
  return (a + b - 1) / b;
}
}  // namespace detail

// Legacy-mode frame (RTS, CTS, block ACK) at the basic rate; width independent.
[[nodiscard]] inline Nanoseconds control_frame_duration(std::int64_t payload_bits, const PhyParams& phy) {
  if (payload_bits <= 0) throw DomainError("control_frame_duration: payload must be > 0");
  const auto symbols = detail::ceil_div(phy.service_field_bits + payload_bits + phy.tail_bits,
                                        phy.legacy_bits_per_symbol);
  return phy.legacy_preamble + symbols * phy.legacy_symbol;
}

[[nodiscard]] inline Nanoseconds rts_duration(const PhyParams& phy) {
  return control_frame_duration(phy.rts_bits, phy);
}
[[nodiscard]] inline Nanoseconds cts_duration(const PhyParams& phy) {
  return control_frame_duration(phy.cts_bits, phy);
}
[[nodiscard]] inline Nanoseconds block_ack_duration(const PhyParams& phy) {
  return control_frame_duration(phy.block_ack_bits, phy);
}

// OFDM symbols needed for `bits` at the given MCS and width: exact ceiling of
// bits / (Y_sc * Y_m * num / den).
[[nodiscard]] inline std::int64_t he_symbols(std::int64_t bits, const McsEntry& mcs, int width) {
  const std::int64_t per_symbol_scaled =
      static_cast<std::int64_t>(subcarriers(width)) * mcs.modulation_bits * mcs.coding_rate.num;
  return detail::ceil_div(bits * mcs.coding_rate.den, per_symbol_scaled);
}

[[nodiscard]] inline Nanoseconds data_duration(const McsEntry& mcs, int width, const PhyParams& phy) {
  const std::int64_t bits =
      phy.service_field_bits +
      phy.frames_per_ampdu * (phy.mpdu_delimiter_bits + phy.mac_header_bits + phy.frame_bits) +
      phy.tail_bits;
  return phy.he_su_preamble + he_symbols(bits, mcs, width) * phy.he_symbol;
}

// RTS + SIFS + CTS + SIFS + DATA + SIFS + BACK + DIFS + Te.
[[nodiscard]] inline Nanoseconds success_duration(const McsEntry& mcs, int width, const PhyParams& phy) {
  return rts_duration(phy) + phy.sifs + cts_duration(phy) + phy.sifs + data_duration(mcs, width, phy) +
         phy.sifs + block_ack_duration(phy) + phy.difs + phy.empty_slot;
}

// Departure rate mu = 1 / T_suc, in 1/s.
[[nodiscard]] inline double departure_rate(const McsEntry& mcs, int width, const PhyParams& phy) {
  return 1.0 / std::chrono::duration<double>(success_duration(mcs, width, phy)).count();
}

[[nodiscard]] inline double expected_backoff_slots(const PhyParams& phy) {
  if (phy.cw_min < 2) throw ConfigError("phy.cw_min: must be >= 2");
  return (phy.cw_min - 1) / 2.0;
}

// Attempt rate lambda = 1 / (E[B] * Te), in 1/s.
[[nodiscard]] inline double backoff_rate(const PhyParams& phy) {
  return 1.0 / (expected_backoff_slots(phy) * std::chrono::duration<double>(phy.empty_slot).count());
}

// Highest-index entry whose sensitivity at `width` is met by the isolated
// received power; nullopt when even the lowest entry fails.
[[nodiscard]] inline std::optional<McsEntry> select_mcs(double rx_power_dbm, int width,
                                                        const McsTable& table) {
  if (table.empty()) throw ConfigError("mcs_table: empty");
  std::optional<McsEntry> best;
  for (const auto& e : table.entries())
    if (rx_power_dbm >= e.sensitivity_dbm(width)) best = e;
  return best;
}

}  // namespace dcb
