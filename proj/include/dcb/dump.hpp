#pragma once

// Line-oriented CTMN dump for diffing and external graph rendering:
//
//   ctmn <scenario> global=<|Psi|> states=<|S|> transitions=<n>
//   state <id> <label> pi=<value>
//   transition <from> <to> <wlan> forward|backward rate=<1/s> alpha=<num/den>
//
// State ids are 1-based discovery indices; s1 is the empty state.

#include <fmt/format.h>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dcb/ctmn.hpp"

namespace dcb {

inline void write_ctmn_dump(std::ostream& out, const std::string& scenario, const CtmnModel& model,
                            const Ctmn& ctmn, const std::vector<double>* pi = nullptr) {
  out << fmt::format("ctmn {} global={} states={} transitions={}\n", scenario, ctmn.global.size(),
                     ctmn.feasible.size(), ctmn.q.transitions().size());
  for (std::size_t k = 0; k < ctmn.feasible.size(); ++k) {
    std::string label = model.label(ctmn.feasible[k]);
    for (char& c : label)
      if (c == ' ') c = '+';
    out << fmt::format("state {} {}", k + 1, label);
    if (pi) out << fmt::format(" pi={:.12g}", (*pi)[k]);
    out << '\n';
  }
  for (const auto& t : ctmn.q.transitions())
    out << fmt::format("transition {} {} {} {} rate={:.12g} alpha={}\n", t.from + 1, t.to + 1,
                       model.wlan(t.wlan).name, t.direction == Direction::Forward ? "forward" : "backward",
                       t.rate, t.alpha.str());
}

}  // namespace dcb
