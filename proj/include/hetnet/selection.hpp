#pragma once

#include "hetnet/geometry.hpp"

namespace hetnet {

enum class Decision { connect_lte, connect_wifi, blocked };

const char* to_string(Decision d);

// Free/busy view of the two pools a user in one zone can reach.
struct CapacitySnapshot {
  int lte_used = 0;
  int lte_capacity = 0;
  int wifi_used = 0;
  int wifi_capacity = 0;
};

// Bit-rate selection rule: in a sub-cell with room on both networks the user
// takes LTE when its congestion-scaled bit rate is at least the Wi-Fi
// nominal rate.
struct SelectionPolicy {
  double lte_bitrate_bps = 0.0;   // uncongested LTE rate, D_1^{avg}
  double wifi_bitrate_bps = 0.0;  // nominal Wi-Fi rate
  double sensitivity = 1.0;       // Lambda used for the LTE scaling

  friend bool operator==(const SelectionPolicy&, const SelectionPolicy&) = default;
};

Decision select_network(ZoneId zone, const CapacitySnapshot& snapshot, int prb_demand,
                        const SelectionPolicy& policy);

}  // namespace hetnet
