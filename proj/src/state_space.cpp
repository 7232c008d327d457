#include "hetnet/state_space.hpp"

#include <algorithm>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

StateLayout::StateLayout(int services, int m) : services_(services), m_(m) {
  if (services < 1) throw std::invalid_argument("state layout needs at least one service");
  if (m < 1) throw std::invalid_argument("state layout needs m >= 1");
}

std::size_t StateLayout::lte_slot(int k, ZoneId zone) const {
  const std::size_t base = slots_per_service() * static_cast<std::size_t>(k);
  if (zone.is_lte_only()) return base;
  return base + static_cast<std::size_t>(zone.value - 1);
}

std::size_t StateLayout::wifi_slot(int k, int i) const {
  const std::size_t base = slots_per_service() * static_cast<std::size_t>(k);
  return base + static_cast<std::size_t>(m_) + static_cast<std::size_t>(i - 2);
}

bool StateLayout::is_lte_slot(std::size_t slot) const {
  return slot % slots_per_service() < static_cast<std::size_t>(m_);
}

int StateLayout::total_lte(const OccupancyState& s) const {
  int sum = 0;
  for (std::size_t slot = 0; slot < s.units.size(); ++slot) {
    if (is_lte_slot(slot)) sum += s.units[slot];
  }
  return sum;
}

int StateLayout::wifi_in(const OccupancyState& s, int i) const {
  int sum = 0;
  for (int k = 0; k < services_; ++k) sum += wifi(s, k, i);
  return sum;
}

double StateLayout::occupancy_ratio(const OccupancyState& s, const Capacities& caps,
                                    ZoneId zone) const {
  double busy = total_lte(s);
  double pool = caps.lte_units;
  if (!zone.is_lte_only()) {
    busy += wifi_in(s, zone.value);
    pool += caps.wifi(zone.value);
  }
  return pool > 0.0 ? busy / pool : 0.0;
}

std::string StateLayout::describe(const OccupancyState& s) const {
  std::ostringstream out;
  out << '(';
  for (int k = 0; k < services_; ++k) {
    if (k > 0) out << " | ";
    for (int z = 0; z < m_; ++z) {
      out << (z ? "," : "") << lte(s, k, z == 0 ? ZoneId::lte_only() : ZoneId::subcell(z + 1));
    }
    out << ';';
    for (int i = 2; i <= m_; ++i) out << (i > 2 ? "," : "") << wifi(s, k, i);
  }
  out << ')';
  return out.str();
}

StateSpace::StateSpace(StateLayout layout, Capacities caps, std::vector<int> prb_demand,
                       std::vector<OccupancyState> states)
    : layout_(layout), caps_(std::move(caps)), prb_(std::move(prb_demand)),
      states_(std::move(states)) {}

std::optional<std::size_t> StateSpace::index_of(const OccupancyState& s) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

bool StateSpace::admissible(const OccupancyState& s) const {
  if (s.units.size() != layout_.size()) return false;
  for (std::size_t slot = 0; slot < s.units.size(); ++slot) {
    const int v = s.units[slot];
    if (v < 0) return false;
    const auto k = slot / layout_.slots_per_service();
    if (layout_.is_lte_slot(slot) && v % prb_[k] != 0) return false;
  }
  if (layout_.total_lte(s) > caps_.lte_units) return false;
  for (int i = 2; i <= layout_.m(); ++i) {
    if (layout_.wifi_in(s, i) > caps_.wifi(i)) return false;
  }
  return true;
}

namespace {

// Depth-first fill of the slots in order, tracking the remaining capacity of
// every pool, so states come out in lexicographic order.
struct Enumerator {
  const StateLayout& layout;
  const Capacities& caps;
  const std::vector<int>& prb;
  std::size_t cap;
  std::vector<OccupancyState> out;
  OccupancyState current;
  int lte_left;
  std::vector<int> wifi_left;

  void fill(std::size_t slot) {
    if (slot == layout.size()) {
      if (out.size() == cap) {
        throw StateSpaceTooLarge("state space exceeds the cap of " + std::to_string(cap) +
                                 " states");
      }
      out.push_back(current);
      return;
    }
    const auto k = slot / layout.slots_per_service();
    if (layout.is_lte_slot(slot)) {
      const int step = prb[k];
      for (int v = 0; v <= lte_left; v += step) {
        current.units[slot] = v;
        lte_left -= v;
        fill(slot + 1);
        lte_left += v;
      }
    } else {
      const auto within = slot % layout.slots_per_service();
      const auto cell = within - static_cast<std::size_t>(layout.m());
      int& left = wifi_left[cell];
      for (int v = 0; v <= left; ++v) {
        current.units[slot] = v;
        left -= v;
        fill(slot + 1);
        left += v;
      }
    }
    current.units[slot] = 0;
  }
};

}  // namespace

StateSpace enumerate_states(const Capacities& caps, const std::vector<int>& prb_demand, int m,
                            std::size_t cap) {
  if (caps.lte_units < 0) throw std::invalid_argument("LTE capacity must be >= 0");
  if (static_cast<int>(caps.wifi_units.size()) != m - 1) {
    throw std::invalid_argument("need one Wi-Fi capacity per sub-cell");
  }
  for (int b : caps.wifi_units) {
    if (b < 0) throw std::invalid_argument("Wi-Fi capacity must be >= 0");
  }
  for (int n : prb_demand) {
    if (n < 1) throw std::invalid_argument("prb demand must be >= 1");
  }
  StateLayout layout(static_cast<int>(prb_demand.size()), m);
  Enumerator e{layout, caps, prb_demand, cap, {}, {}, caps.lte_units, caps.wifi_units};
  e.current.units.assign(layout.size(), 0);
  e.fill(0);
  return StateSpace(layout, caps, prb_demand, std::move(e.out));
}

}  // namespace hetnet
