#pragma once

// CTMN construction: the global state space, breadth-first exploration of the
// feasible states with forward (backoff expiry) and backward (end of
// transmission) transitions, and the transition-rate matrix Q.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcb/channelization.hpp"
#include "dcb/error.hpp"
#include "dcb/phy_timing.hpp"
#include "dcb/policy.hpp"
#include "dcb/propagation.hpp"
#include "dcb/scenario.hpp"

namespace dcb {

// Per WLAN: 0 when inactive, k+1 when transmitting on candidate channel k.
class NetState {
 public:
  NetState() = default;
  explicit NetState(std::size_t wlans) : codes_(wlans, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return codes_.size(); }
  [[nodiscard]] bool active(std::size_t w) const { return codes_.at(w) != 0; }
  // Candidate index of an active WLAN.
  [[nodiscard]] std::size_t candidate(std::size_t w) const { return codes_.at(w) - 1u; }
  [[nodiscard]] std::uint8_t code(std::size_t w) const { return codes_.at(w); }
  [[nodiscard]] std::size_t active_count() const noexcept {
    std::size_t n = 0;
    for (auto c : codes_) n += c != 0;
    return n;
  }

  [[nodiscard]] NetState with(std::size_t w, std::size_t candidate) const {
    NetState s = *this;
    s.codes_.at(w) = static_cast<std::uint8_t>(candidate + 1);
    return s;
  }
  [[nodiscard]] NetState without(std::size_t w) const {
    NetState s = *this;
    s.codes_.at(w) = 0;
    return s;
  }

  [[nodiscard]] const std::vector<std::uint8_t>& codes() const noexcept { return codes_; }

  friend bool operator==(const NetState&, const NetState&) = default;

 private:
  std::vector<std::uint8_t> codes_;
};

struct NetStateHash {
  std::size_t operator()(const NetState& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : s.codes()) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Cartesian product over WLANs of {inactive} + candidate channels. States are
// indexed in mixed radix with the first WLAN most significant, so the order
// is lexicographic on the per-WLAN codes.
class GlobalSpace {
 public:
  GlobalSpace() = default;
  explicit GlobalSpace(std::vector<std::size_t> radix) : radix_(std::move(radix)) {
    size_ = 1;
    for (auto r : radix_) {
      if (size_ > std::numeric_limits<std::size_t>::max() / r) {
        size_ = std::numeric_limits<std::size_t>::max();
        break;
      }
      size_ *= r;
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] std::size_t wlan_count() const noexcept { return radix_.size(); }

  [[nodiscard]] bool contains(const NetState& s) const noexcept {
    if (s.size() != radix_.size()) return false;
    for (std::size_t w = 0; w < radix_.size(); ++w)
      if (s.code(w) >= radix_[w]) return false;
    return true;
  }

  [[nodiscard]] std::size_t index_of(const NetState& s) const {
    std::size_t idx = 0;
    for (std::size_t w = 0; w < radix_.size(); ++w) idx = idx * radix_[w] + s.code(w);
    return idx;
  }

  [[nodiscard]] NetState state_at(std::size_t idx) const {
    NetState s(radix_.size());
    for (std::size_t w = radix_.size(); w-- > 0;) {
      const auto c = idx % radix_[w];
      idx /= radix_[w];
      if (c != 0) s = s.with(w, c - 1);
    }
    return s;
  }

  // Materializes every global state in canonical order.
  [[nodiscard]] std::vector<NetState> states() const {
    std::vector<NetState> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back(state_at(i));
    return out;
  }

 private:
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
};

[[nodiscard]] inline GlobalSpace generate_global_space(const std::vector<Wlan>& wlans,
                                                       const ChannelizationScheme& scheme,
                                                       std::size_t state_cap = 1'000'000) {
  std::vector<std::size_t> radix;
  for (const auto& w : wlans) radix.push_back(1 + candidate_tx_channels(w.allocation, scheme).size());
  GlobalSpace space(std::move(radix));
  if (space.size() > state_cap)
    throw ModelError("global state space too large: " +
                     (space.size() == std::numeric_limits<std::size_t>::max()
                          ? std::string("overflow")
                          : std::to_string(space.size())) +
                     " states exceed the cap of " + std::to_string(state_cap));
  return space;
}

enum class Direction { Forward, Backward };

struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t wlan = 0;
  Direction direction = Direction::Forward;
  double rate = 0.0;
  // Policy weight of a forward transition; 1 for backward ones.
  Fraction alpha{1, 1};
};

// Sparse generator matrix over the feasible states, in discovery order.
class RateMatrix {
 public:
  RateMatrix() = default;
  explicit RateMatrix(std::size_t n) : n_(n), diagonal_(n, 0.0) {}

  void add(const Transition& t) {
    transitions_.push_back(t);
    diagonal_.at(t.from) -= t.rate;
  }
  void resize(std::size_t n) {
    n_ = n;
    diagonal_.resize(n, 0.0);
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  [[nodiscard]] double diagonal(std::size_t i) const { return diagonal_.at(i); }

  [[nodiscard]] double at(std::size_t i, std::size_t j) const {
    if (i == j) return diagonal(i);
    double v = 0.0;
    for (const auto& t : transitions_)
      if (t.from == i && t.to == j) v += t.rate;
    return v;
  }

  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (double d : diagonal_) m = std::max(m, std::abs(d));
    for (const auto& t : transitions_) m = std::max(m, std::abs(t.rate));
    return m;
  }

  [[nodiscard]] Eigen::MatrixXd dense() const {
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : transitions_)
      q(static_cast<Eigen::Index>(t.from), static_cast<Eigen::Index>(t.to)) += t.rate;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      q(ii, ii) = diagonal_[i];
    }
    return q;
  }

  [[nodiscard]] Eigen::SparseMatrix<double> sparse() const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(transitions_.size() + n_);
    for (const auto& t : transitions_)
      trip.emplace_back(static_cast<int>(t.from), static_cast<int>(t.to), t.rate);
    for (std::size_t i = 0; i < n_; ++i)
      trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diagonal_[i]);
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::SparseMatrix<double> q(n, n);
    q.setFromTriplets(trip.begin(), trip.end());
    return q;
  }

  // Outgoing transition indices per state.
  [[nodiscard]] std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> out(n_);
    for (std::size_t i = 0; i < transitions_.size(); ++i) out[transitions_[i].from].push_back(i);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Transition> transitions_;
  std::vector<double> diagonal_;
};

// Feasible states in discovery order; s_1 is the all-inactive state.
class FeasibleSpace {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
  [[nodiscard]] const NetState& operator[](std::size_t i) const { return states_.at(i); }
  [[nodiscard]] const std::vector<NetState>& states() const noexcept { return states_; }

  [[nodiscard]] std::optional<std::size_t> find(const NetState& s) const {
    const auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Index of `s`, appending it when new.
  std::size_t intern(const NetState& s) {
    const auto [it, inserted] = index_.try_emplace(s, states_.size());
    if (inserted) states_.push_back(s);
    return it->second;
  }

 private:
  std::vector<NetState> states_;
  std::unordered_map<NetState, std::size_t, NetStateHash> index_;
};

// Everything exploration and the metrics need, precomputed from a scenario:
// candidate channels, rates, and received power maps between every
// (transmitter, candidate) pair and every AP and STA.
class CtmnModel {
 public:
  struct WlanModel {
    std::string name;
    Allocation allocation;
    Policy policy = Policy::AlwaysMax;
    std::vector<Channel> candidates;
    std::vector<WidthLink> links;  // per candidate
    std::size_t sta_count = 0;
  };

  explicit CtmnModel(const ScenarioConfig& cfg)
      : scheme_(cfg.scheme()), radio_(cfg.radio), phy_(cfg.phy), lambda_(dcb::backoff_rate(cfg.phy)) {
    cfg.validate();
    if (cfg.phy.backoff_stages != PhyParams{}.backoff_stages)
      diagnostics_.push_back("phy.backoff_stages is ignored by the analytical model (memoryless attempt rate)");
    const std::size_t m = cfg.wlans.size();
    for (const auto& w : cfg.wlans) {
      WlanModel wm{w.name, w.allocation, w.policy, candidate_tx_channels(w.allocation, scheme_), {}, w.stas.size()};
      auto setup = setup_links(w, cfg);
      wm.links = std::move(setup.by_candidate);
      for (auto& d : setup.diagnostics) diagnostics_.push_back(std::move(d));
      wlans_.push_back(std::move(wm));
    }
    ap_power_.resize(m);
    sta_power_.resize(m);
    for (std::size_t x = 0; x < m; ++x) {
      const auto& tx = cfg.wlans[x];
      for (const auto& ch : wlans_[x].candidates) {
        std::vector<PowerMap> at_ap;
        std::vector<std::vector<PowerMap>> at_sta;
        for (std::size_t y = 0; y < m; ++y) {
          const auto& rx = cfg.wlans[y];
          at_ap.push_back(x == y ? PowerMap(cfg.n_sys)
                                 : received_power_map(tx.ap, rx.ap, ch, radio_, cfg.n_sys));
          std::vector<PowerMap> stas;
          for (const auto& sta : rx.stas) stas.push_back(received_power_map(tx.ap, sta, ch, radio_, cfg.n_sys));
          at_sta.push_back(std::move(stas));
        }
        ap_power_[x].push_back(std::move(at_ap));
        sta_power_[x].push_back(std::move(at_sta));
      }
    }
    state_cap_ = cfg.solver.state_cap;
  }

  [[nodiscard]] std::size_t wlan_count() const noexcept { return wlans_.size(); }
  [[nodiscard]] const WlanModel& wlan(std::size_t w) const { return wlans_.at(w); }
  [[nodiscard]] const ChannelizationScheme& scheme() const noexcept { return scheme_; }
  [[nodiscard]] const RadioConfig& radio() const noexcept { return radio_; }
  [[nodiscard]] const PhyParams& phy() const noexcept { return phy_; }
  [[nodiscard]] double backoff_rate() const noexcept { return lambda_; }
  [[nodiscard]] std::size_t state_cap() const noexcept { return state_cap_; }
  [[nodiscard]] const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

  [[nodiscard]] const Channel& channel(const NetState& s, std::size_t w) const {
    return wlans_.at(w).candidates.at(s.candidate(w));
  }
  [[nodiscard]] double departure_rate(const NetState& s, std::size_t w) const {
    return wlans_.at(w).links.at(s.candidate(w)).departure_rate;
  }

  // Cumulative power at the AP of `observer` from every active WLAN in `s`.
  [[nodiscard]] PowerMap sensed_at_ap(const NetState& s, std::size_t observer) const {
    PowerMap sum(scheme_.n_sys());
    for (std::size_t y = 0; y < wlans_.size(); ++y)
      if (y != observer && s.active(y)) sum += ap_power_[y][s.candidate(y)][observer];
    return sum;
  }

  [[nodiscard]] ChannelSet free_set(const NetState& s, std::size_t w) const {
    return free_channels(sensed_at_ap(s, w), wlans_.at(w).allocation.channel, radio_.cca_dbm);
  }

  // SINR at STA `sta` of active WLAN `w` in state `s`.
  [[nodiscard]] double sinr_db(const NetState& s, std::size_t w, std::size_t sta) const {
    const std::size_t k = s.candidate(w);
    const Channel& ch = wlans_.at(w).candidates.at(k);
    const double signal = sta_power_[w][k][w][sta].total(ch);
    double interference = 0.0;
    for (std::size_t y = 0; y < wlans_.size(); ++y)
      if (y != w && s.active(y)) interference += sta_power_[y][s.candidate(y)][w][sta].total(ch);
    return sinr_db_from_powers(signal, interference, noise_mw(radio_, ch.width()));
  }

  // Share of w's STAs that decode w's transmission in state `s`: decodable on
  // the isolated link and SINR above the capture-effect threshold.
  [[nodiscard]] double capture_share(const NetState& s, std::size_t w) const {
    if (!s.active(w)) return 0.0;
    const auto& link = wlans_.at(w).links.at(s.candidate(w));
    std::size_t ok = 0;
    for (std::size_t j = 0; j < wlans_.at(w).sta_count; ++j)
      if (link.sta_decodable[j] && sinr_db(s, w, j) > radio_.capture_effect_db) ++ok;
    return static_cast<double>(ok) / static_cast<double>(wlans_.at(w).sta_count);
  }

  [[nodiscard]] std::string label(const NetState& s) const {
    std::string out;
    for (std::size_t w = 0; w < wlans_.size(); ++w) {
      if (!s.active(w)) continue;
      if (!out.empty()) out += ' ';
      out += wlans_[w].name + to_string(channel(s, w));
    }
    return out.empty() ? "-" : out;
  }

 private:
  ChannelizationScheme scheme_;
  RadioConfig radio_;
  PhyParams phy_;
  double lambda_;
  std::size_t state_cap_ = 1'000'000;
  std::vector<WlanModel> wlans_;
  // [transmitter][candidate][receiver WLAN] -> map at the receiver's AP
  std::vector<std::vector<std::vector<PowerMap>>> ap_power_;
  // [transmitter][candidate][receiver WLAN][sta] -> map at that STA
  std::vector<std::vector<std::vector<std::vector<PowerMap>>>> sta_power_;
  std::vector<std::string> diagnostics_;
};

struct Ctmn {
  GlobalSpace global;
  FeasibleSpace feasible;
  RateMatrix q;
};

// Breadth-first exploration from the empty state. States are explored in
// discovery order; inside a state WLANs are visited in declaration order. An
// active WLAN adds a backward transition at mu_X(s); an inactive one senses
// its free channels, applies its policy and adds one forward transition per
// chosen channel at alpha * lambda. Targets are discovered as they appear, so
// states only reachable through backward transitions are kept.
[[nodiscard]] inline Ctmn explore(const CtmnModel& model) {
  const std::size_t m = model.wlan_count();
  std::vector<std::size_t> radix;
  for (std::size_t w = 0; w < m; ++w) radix.push_back(1 + model.wlan(w).candidates.size());
  Ctmn out{GlobalSpace(std::move(radix)), {}, {}};
  if (out.global.size() > model.state_cap())
    throw ModelError("global state space too large: " + std::to_string(out.global.size()) +
                     " states exceed the cap of " + std::to_string(model.state_cap()));

  std::vector<Transition> transitions;
  out.feasible.intern(NetState(m));
  for (std::size_t k = 0; k < out.feasible.size(); ++k) {
    const NetState s = out.feasible[k];
    for (std::size_t x = 0; x < m; ++x) {
      if (s.active(x)) {
        const NetState target = s.without(x);
        const std::size_t to = out.feasible.intern(target);
        transitions.push_back({k, to, x, Direction::Backward, model.departure_rate(s, x), {1, 1}});
        continue;
      }
      const auto& wm = model.wlan(x);
      const ChannelChoice choice =
          select_tx_channels(wm.policy, wm.allocation, model.free_set(s, x), model.scheme());
      for (const auto& opt : choice) {
        const auto it = std::find(wm.candidates.begin(), wm.candidates.end(), opt.channel);
        const NetState target = s.with(x, static_cast<std::size_t>(it - wm.candidates.begin()));
        if (it == wm.candidates.end() || !out.global.contains(target))
          throw ModelError("internal error: forward target " + to_string(opt.channel) + " of WLAN " +
                           wm.name + " is not a global state");
        const std::size_t to = out.feasible.intern(target);
        transitions.push_back(
            {k, to, x, Direction::Forward, opt.probability.value() * model.backoff_rate(), opt.probability});
      }
    }
    if (out.feasible.size() > model.state_cap())
      throw ModelError("feasible state space exceeds the cap of " + std::to_string(model.state_cap()));
  }

  out.q = RateMatrix(out.feasible.size());
  for (const auto& t : transitions) out.q.add(t);
  return out;
}

}  // namespace dcb
