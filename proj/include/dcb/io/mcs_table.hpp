#pragma once

// MCS table text format, one entry per line:
//
//   # index  bits  rate  s20    s40    s80    s160
//   0        1     1/2   -82    -79    -76    -73
//
// Blank lines and anything after '#' are ignored. Sensitivities in dBm.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dcb/error.hpp"
#include "dcb/phy_timing.hpp"

namespace dcb::io {

[[nodiscard]] inline McsTable parse_mcs_table(std::istream& in, const std::string& source = "mcs table") {
  std::vector<McsEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    McsEntry e;
    std::string rate;
    try {
      e.index = std::stoi(first);
    } catch (const std::exception&) {
      throw ConfigError(where + ": bad MCS index '" + first + "'");
    }
    if (!(ls >> e.modulation_bits >> rate)) throw ConfigError(where + ": expected 'index bits num/den s20 s40 s80 s160'");
    const auto slash = rate.find('/');
    try {
      if (slash == std::string::npos) throw ConfigError("");
      e.coding_rate.num = std::stoi(rate.substr(0, slash));
      e.coding_rate.den = std::stoi(rate.substr(slash + 1));
    } catch (const std::exception&) {
      throw ConfigError(where + ": coding rate must be num/den, got '" + rate + "'");
    }
    for (double& s : e.min_sensitivity_dbm)
      if (!(ls >> s)) throw ConfigError(where + ": expected four sensitivities (20/40/80/160 MHz)");
    std::string extra;
    if (ls >> extra) throw ConfigError(where + ": unexpected trailing field '" + extra + "'");
    entries.push_back(e);
  }
  try {
    return McsTable(std::move(entries));
  } catch (const ConfigError& err) {
    throw ConfigError(source + ": " + err.what());
  }
}

[[nodiscard]] inline McsTable load_mcs_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("mcs_table_file: cannot open '" + path + "'");
  return parse_mcs_table(in, path);
}

inline void write_mcs_table(std::ostream& out, const McsTable& table) {
  out << "# index bits rate s20 s40 s80 s160\n";
  for (const auto& e : table.entries()) {
    out << e.index << ' ' << e.modulation_bits << ' ' << e.coding_rate.num << '/' << e.coding_rate.den;
    for (double s : e.min_sensitivity_dbm) out << ' ' << s;
    out << '\n';
  }
}

}  // namespace dcb::io
