#include <gtest/gtest.h>

#include <chrono>

#include "oracles.hpp"

using namespace dcb;
using namespace std::chrono_literals;

namespace {
const McsTable& table() {
  static const McsTable t = default_mcs_table();
  return t;
}
const McsEntry& mcs(int i) { return table().entries().at(static_cast<std::size_t>(i)); }
double us(Nanoseconds d) { return static_cast<double>(d.count()) / 1000.0; }
}  // namespace

TEST(Subcarriers, Table) {
  EXPECT_EQ(subcarriers(1), 234);
  EXPECT_EQ(subcarriers(2), 468);
  EXPECT_EQ(subcarriers(4), 980);
  EXPECT_EQ(subcarriers(8), 1960);
  EXPECT_THROW((void)subcarriers(3), DomainError);
  EXPECT_THROW((void)subcarriers(16), DomainError);
}

TEST(BitsPerSymbol, Examples) {
  EXPECT_DOUBLE_EQ(bits_per_symbol(mcs(11), 1), 1950.0);
  EXPECT_NEAR(data_rate_bps(mcs(11), 1, PhyParams{}) / 1e6, 121.875, 1e-9);
  EXPECT_DOUBLE_EQ(bits_per_symbol(mcs(0), 1), 117.0);
  EXPECT_NEAR(bits_per_symbol(mcs(11), 8), 16333.333, 1e-3);
}

TEST(ControlFrames, Durations) {
  const PhyParams p;
  EXPECT_EQ(rts_duration(p), 56us);
  EXPECT_EQ(cts_duration(p), 48us);
  EXPECT_EQ(block_ack_duration(p), 100us);
  EXPECT_THROW((void)control_frame_duration(0, p), DomainError);
}

TEST(ControlFrames, CeilingAtBoundary) {
  const PhyParams p;
  // 16 + 190 + 18 = 224 bits = 9.33 symbols; 16 + 182 + 18 = 216 = exactly 9.
  EXPECT_EQ(control_frame_duration(182, p), 20us + 9 * 4us);
  EXPECT_EQ(control_frame_duration(183, p), 20us + 10 * 4us);
}

TEST(DataDuration, Mcs11) {
  const PhyParams p;
  EXPECT_EQ(data_duration(mcs(11), 1, p), 6660us);
  EXPECT_EQ(data_duration(mcs(11), 8, p), 948us);
}

TEST(DataDuration, VeryHighRateIsOneSymbol) {
  const McsEntry huge{0, 1 << 20, {1, 1}, {-82, -79, -76, -73}};
  EXPECT_EQ(data_duration(huge, 8, PhyParams{}), 164us + 16us);
}

TEST(HeSymbols, ExactCeiling) {
  // 1950 bits per symbol at MCS 11 / 20 MHz.
  EXPECT_EQ(he_symbols(1950 * 4, mcs(11), 1), 4);
  EXPECT_EQ(he_symbols(1950 * 4 + 1, mcs(11), 1), 5);
}

TEST(SuccessDuration, Mcs11PerWidth) {
  const PhyParams p;
  EXPECT_EQ(success_duration(mcs(11), 1, p), 6955us);
  EXPECT_EQ(success_duration(mcs(11), 2, p), 3707us);
  EXPECT_EQ(success_duration(mcs(11), 4, p), 2011us);
  EXPECT_NEAR(departure_rate(mcs(11), 1, p), 143.78, 0.005);
  EXPECT_NEAR(departure_rate(mcs(11), 2, p), 269.76, 0.005);
  EXPECT_NEAR(departure_rate(mcs(11), 4, p), 497.27, 0.005);
}

TEST(SuccessDuration, MatchesTextbookFormulaForEveryMcsAndWidth) {
  const PhyParams p;
  for (const auto& e : table().entries())
    for (int w : kSupportedWidths) {
      const double yc = static_cast<double>(e.coding_rate.num) / e.coding_rate.den;
      EXPECT_DOUBLE_EQ(us(success_duration(e, w, p)),
                       oracle::TimingOracle::success_us(e.modulation_bits, yc, subcarriers(w)))
          << "mcs " << e.index << " width " << w;
    }
}

TEST(DataDuration, MonotoneInWidthAndMcs) {
  const PhyParams p;
  const auto& entries = table().entries();
  for (const auto& e : entries)
    for (std::size_t i = 1; i < kSupportedWidths.size(); ++i)
      EXPECT_LE(data_duration(e, kSupportedWidths[i], p), data_duration(e, kSupportedWidths[i - 1], p));
  for (int w : kSupportedWidths)
    for (std::size_t i = 1; i < entries.size(); ++i)
      EXPECT_LE(data_duration(entries[i], w, p), data_duration(entries[i - 1], w, p));
}

TEST(SuccessDuration, DoublingWidthStrictlyShorter) {
  const PhyParams p;
  for (const auto& e : table().entries())
    for (std::size_t i = 1; i < kSupportedWidths.size(); ++i)
      EXPECT_LT(success_duration(e, kSupportedWidths[i], p), success_duration(e, kSupportedWidths[i - 1], p));
}

TEST(BackoffRate, Examples) {
  PhyParams p;
  EXPECT_DOUBLE_EQ(expected_backoff_slots(p), 7.5);
  EXPECT_NEAR(backoff_rate(p), 1.0 / 67.5e-6, 1e-6);
  p.cw_min = 3;
  EXPECT_DOUBLE_EQ(expected_backoff_slots(p), 1.0);
  p.cw_min = 2;
  EXPECT_DOUBLE_EQ(expected_backoff_slots(p), 0.5);
  p.cw_min = 1;
  EXPECT_THROW((void)backoff_rate(p), ConfigError);
}

TEST(SelectMcs, Thresholds) {
  const auto t = default_mcs_table();
  EXPECT_EQ(select_mcs(-30, 1, t)->index, 11);
  EXPECT_FALSE(select_mcs(-90, 1, t).has_value());
  EXPECT_EQ(select_mcs(-64.0, 1, t)->index, 7);
  EXPECT_EQ(select_mcs(-64.1, 1, t)->index, 6);
  // +3 dB per doubling of width.
  EXPECT_EQ(select_mcs(-61.0, 2, t)->index, 7);
  EXPECT_EQ(select_mcs(-61.1, 2, t)->index, 6);
}

TEST(McsTable, DefaultIsMonotone) {
  const auto t = default_mcs_table();
  ASSERT_EQ(t.entries().size(), 12u);
  EXPECT_NO_THROW(t.validate());
}

TEST(McsTable, RejectsNonMonotone) {
  auto e = default_mcs_table().entries();
  std::swap(e[3].min_sensitivity_dbm, e[4].min_sensitivity_dbm);
  EXPECT_THROW(McsTable{e}, ConfigError);
  EXPECT_THROW(McsTable{std::vector<McsEntry>{}}, ConfigError);
}

TEST(PhyParams, Validation) {
  PhyParams p;
  p.packet_error_rate = 1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = PhyParams{};
  p.sifs = 0us;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_EQ(PhyParams{}.useful_bits_per_exchange(), 768000);
}
