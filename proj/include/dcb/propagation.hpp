#pragma once

// Link budget: dual-slope path loss, per-basic-channel transmit power with
// adjacent-channel leakage, CCA sensing and SINR.

#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dcb/channelization.hpp"
#include "dcb/error.hpp"

namespace dcb {

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

[[nodiscard]] inline double distance(const Position& a, const Position& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

struct RadioConfig {
  double tx_power_dbm = 15.0;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  double cca_dbm = -82.0;
  double capture_effect_db = 20.0;
  // Background noise per 20 MHz basic channel.
  double noise_dbm = -95.0;
  // Per-basic-channel loss each time the bandwidth doubles.
  double bonding_loss_db = 3.0;
  // Attenuation of the power leaked into each contiguous basic channel,
  // relative to the in-band per-channel power. +inf disables leakage.
  double adjacent_leakage_db = 3.0;
  double break_distance_m = 9.0;

  void validate(const std::string& field = "radio") const {
    auto finite = [&](double v, const char* name) {
      if (!std::isfinite(v)) throw ConfigError(field + "." + name + ": must be finite");
    };
    finite(tx_gain_db, "tx_gain_db");
    finite(rx_gain_db, "rx_gain_db");
    finite(cca_dbm, "cca_dbm");
    finite(noise_dbm, "noise_dbm");
    finite(capture_effect_db, "capture_effect_db");
    finite(bonding_loss_db, "bonding_loss_db");
    if (std::isnan(tx_power_dbm) || tx_power_dbm == std::numeric_limits<double>::infinity())
      throw ConfigError(field + ".tx_power_dbm: must be finite or -inf");
    if (!(cca_dbm > noise_dbm)) throw ConfigError(field + ".cca_dbm: must exceed noise_dbm");
    if (!(capture_effect_db > 0)) throw ConfigError(field + ".capture_effect_db: must be > 0");
    if (bonding_loss_db < 0) throw ConfigError(field + ".bonding_loss_db: must be >= 0");
    if (std::isnan(adjacent_leakage_db) || adjacent_leakage_db < 0)
      throw ConfigError(field + ".adjacent_leakage_db: must be >= 0 (or .inf)");
    if (!(break_distance_m > 0) || !std::isfinite(break_distance_m))
      throw ConfigError(field + ".break_distance_m: must be > 0");
  }

  friend bool operator==(const RadioConfig&, const RadioConfig&) = default;
};

[[nodiscard]] inline double dbm_to_mw(double dbm) noexcept { return std::pow(10.0, dbm / 10.0); }
[[nodiscard]] inline double mw_to_dbm(double mw) noexcept {
  return mw > 0 ? 10.0 * std::log10(mw) : -std::numeric_limits<double>::infinity();
}

// Dual-slope log-distance model for 5.25 GHz indoor room-corridor links.
[[nodiscard]] inline double path_loss_db(double d_m, double break_distance_m = 9.0) {
  if (!(d_m > 0) || !std::isfinite(d_m))
    throw DomainError("path_loss_db: distance must be positive, got " + std::to_string(d_m));
  return d_m <= break_distance_m ? 53.2 + 25.8 * std::log10(d_m) : 56.4 + 29.1 * std::log10(d_m);
}

[[nodiscard]] inline double per_channel_tx_power_dbm(double p_tx_dbm, int width,
                                                     double loss_per_doubling_db = 3.0) {
  if (!is_power_of_two(width))
    throw DomainError("per_channel_tx_power_dbm: width must be a power of two, got " +
                      std::to_string(width));
  return p_tx_dbm - loss_per_doubling_db * std::log2(static_cast<double>(width));
}

// Linear power (mW) per basic channel 1..n_sys.
class PowerMap {
 public:
  PowerMap() = default;
  explicit PowerMap(int n_sys) : mw_(static_cast<std::size_t>(n_sys), 0.0) {}

  [[nodiscard]] int n_sys() const noexcept { return static_cast<int>(mw_.size()); }
  [[nodiscard]] double at(int c) const { return mw_.at(static_cast<std::size_t>(c - 1)); }
  double& at(int c) { return mw_.at(static_cast<std::size_t>(c - 1)); }
  [[nodiscard]] double dbm(int c) const { return mw_to_dbm(at(c)); }

  [[nodiscard]] double total(const Channel& ch) const {
    double s = 0.0;
    for (int c = ch.lo; c <= ch.hi; ++c) s += at(c);
    return s;
  }
  [[nodiscard]] double total() const { return std::accumulate(mw_.begin(), mw_.end(), 0.0); }

  PowerMap& operator+=(const PowerMap& o) {
    for (std::size_t i = 0; i < mw_.size(); ++i) mw_[i] += o.mw_[i];
    return *this;
  }
  PowerMap& scale(double factor) {
    for (double& v : mw_) v *= factor;
    return *this;
  }

  [[nodiscard]] const std::vector<double>& values() const noexcept { return mw_; }

 private:
  std::vector<double> mw_;
};

// Power radiated per basic channel at the 0 m reference: in-band channels
// carry the per-channel share, the single contiguous channel on each side
// carries the leakage. Leakage outside [1, n_sys] is dropped.
[[nodiscard]] inline PowerMap emitted_power_map(const Channel& tx, const RadioConfig& radio, int n_sys) {
  PowerMap map(n_sys);
  const double in_band = per_channel_tx_power_dbm(radio.tx_power_dbm, tx.width(), radio.bonding_loss_db);
  for (int c = tx.lo; c <= tx.hi; ++c) map.at(c) = dbm_to_mw(in_band);
  if (std::isfinite(radio.adjacent_leakage_db)) {
    const double leak = dbm_to_mw(in_band - radio.adjacent_leakage_db);
    if (tx.lo - 1 >= 1) map.at(tx.lo - 1) = leak;
    if (tx.hi + 1 <= n_sys) map.at(tx.hi + 1) = leak;
  }
  return map;
}

[[nodiscard]] inline PowerMap received_power_map(const Position& tx, const Position& rx,
                                                 const Channel& tx_channel, const RadioConfig& radio,
                                                 int n_sys) {
  const double d = distance(tx, rx);
  if (!(d > 0)) throw DomainError("received_power_map: transmitter and receiver coincide");
  const double gain_db = -path_loss_db(d, radio.break_distance_m) + radio.tx_gain_db + radio.rx_gain_db;
  return emitted_power_map(tx_channel, radio, n_sys).scale(dbm_to_mw(gain_db));
}

// An ongoing transmission from an AP on a channel.
struct ActiveTransmission {
  Position ap;
  Channel channel;
};

// Cumulative power sensed at `observer` from every active transmitter.
[[nodiscard]] inline PowerMap sensed_power(const Position& observer,
                                           std::span<const ActiveTransmission> active,
                                           const RadioConfig& radio, int n_sys) {
  PowerMap sum(n_sys);
  for (const auto& t : active) sum += received_power_map(t.ap, observer, t.channel, radio, n_sys);
  return sum;
}

// Basic channels of `allocated` whose cumulative sensed power is below CCA.
[[nodiscard]] inline ChannelSet free_channels(const PowerMap& sensed, const Channel& allocated,
                                              double cca_dbm) {
  const double cca_mw = dbm_to_mw(cca_dbm);
  ChannelSet free;
  for (int c = allocated.lo; c <= allocated.hi; ++c)
    if (sensed.at(c) < cca_mw) free.insert(c);
  return free;
}

// Free set of a WLAN (sensed at its AP) given the other active transmissions.
[[nodiscard]] inline ChannelSet sensed_free_set(const Position& ap, const Allocation& alloc,
                                                std::span<const ActiveTransmission> active,
                                                const RadioConfig& radio, int n_sys) {
  return free_channels(sensed_power(ap, active, radio, n_sys), alloc.channel, radio.cca_dbm);
}

// Background noise over a transmission `width` basic channels wide (noise
// level is per 20 MHz).
[[nodiscard]] inline double noise_mw(const RadioConfig& radio, int width) {
  return dbm_to_mw(radio.noise_dbm) * width;
}

[[nodiscard]] inline double sinr_db_from_powers(double signal_mw, double interference_mw,
                                                double noise_mw_total) noexcept {
  return 10.0 * std::log10(signal_mw / (interference_mw + noise_mw_total));
}

// SINR at `sta` for the transmission `own`, summed over own.channel.
[[nodiscard]] inline double sinr_db(const Position& sta, const ActiveTransmission& own,
                                    std::span<const ActiveTransmission> interferers,
                                    const RadioConfig& radio, int n_sys) {
  const double s = received_power_map(own.ap, sta, own.channel, radio, n_sys).total(own.channel);
  double i = 0.0;
  for (const auto& t : interferers)
    i += received_power_map(t.ap, sta, t.channel, radio, n_sys).total(own.channel);
  return sinr_db_from_powers(s, i, noise_mw(radio, own.channel.width()));
}

}  // namespace dcb
