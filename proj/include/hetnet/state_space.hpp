#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/geometry.hpp"

namespace hetnet {

// Bandwidth pools: B_1^{uc} LTE units shared by the whole cluster and B_i
// Wi-Fi units per sub-cell (wifi_units[i - 2] for sub-cell i).
struct Capacities {
  int lte_units = 0;
  std::vector<int> wifi_units;

  int wifi(int i) const { return wifi_units.at(static_cast<std::size_t>(i - 2)); }
  friend bool operator==(const Capacities&, const Capacities&) = default;
};

// Busy units per slot; the slot order is given by StateLayout.
struct OccupancyState {
  std::vector<int> units;
  friend auto operator<=>(const OccupancyState&, const OccupancyState&) = default;
};

// Slot layout of an OccupancyState. Per service k (0-based) the slots are
// [LTE in C_0, LTE in C_2 .. C_m, Wi-Fi in C_2 .. C_m], services in order.
class StateLayout {
 public:
  StateLayout() = default;
  StateLayout(int services, int m);

  int services() const { return services_; }
  int m() const { return m_; }
  int subcells() const { return m_ - 1; }
  std::size_t slots_per_service() const { return static_cast<std::size_t>(2 * m_ - 1); }
  std::size_t size() const { return slots_per_service() * static_cast<std::size_t>(services_); }

  std::size_t lte_slot(int k, ZoneId zone) const;
  std::size_t wifi_slot(int k, int i) const;
  bool is_lte_slot(std::size_t slot) const;

  int lte(const OccupancyState& s, int k, ZoneId zone) const { return s.units[lte_slot(k, zone)]; }
  int wifi(const OccupancyState& s, int k, int i) const { return s.units[wifi_slot(k, i)]; }
  int total_lte(const OccupancyState& s) const;
  int wifi_in(const OccupancyState& s, int i) const;

  // Busy fraction seen from zone i: (all LTE units + Wi-Fi units of C_i) over
  // (B_1^{uc} + B_i). For C_0 only the LTE pool counts.
  double occupancy_ratio(const OccupancyState& s, const Capacities& caps, ZoneId zone) const;

  std::string describe(const OccupancyState& s) const;

 private:
  int services_ = 0;
  int m_ = 0;
};

// Lexicographically ordered state space with O(log n) lookup.
class StateSpace {
 public:
  StateSpace(StateLayout layout, Capacities caps, std::vector<int> prb_demand,
             std::vector<OccupancyState> states);

  const StateLayout& layout() const { return layout_; }
  const Capacities& capacities() const { return caps_; }
  const std::vector<int>& prb_demand() const { return prb_; }
  const std::vector<OccupancyState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const OccupancyState& operator[](std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> index_of(const OccupancyState& s) const;
  // Capacity and granularity constraints of the space.
  bool admissible(const OccupancyState& s) const;

 private:
  StateLayout layout_;
  Capacities caps_;
  std::vector<int> prb_;
  std::vector<OccupancyState> states_;
};

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

// All states with sum of LTE units <= B_1^{uc}, per-sub-cell Wi-Fi units
// <= B_i, LTE units of service k in multiples of prb_demand[k]. Throws
// StateSpaceTooLarge past `cap` states.
StateSpace enumerate_states(const Capacities& caps, const std::vector<int>& prb_demand, int m,
                            std::size_t cap = kDefaultStateCap);

}  // namespace hetnet
