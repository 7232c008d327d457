#include "hetnet/selection.hpp"

#include "hetnet/metrics.hpp"

namespace hetnet {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::connect_lte:
      return "connect_lte";
    case Decision::connect_wifi:
      return "connect_wifi";
    case Decision::blocked:
      return "blocked";
  }
  return "?";
}

Decision select_network(ZoneId zone, const CapacitySnapshot& snap, int prb_demand,
                        const SelectionPolicy& policy) {
  const bool lte_room = snap.lte_used + prb_demand <= snap.lte_capacity;
  if (zone.is_lte_only()) return lte_room ? Decision::connect_lte : Decision::blocked;

  const bool wifi_room = snap.wifi_used + 1 <= snap.wifi_capacity;
  if (lte_room && wifi_room) {
    const int pool = snap.lte_capacity + snap.wifi_capacity;
    const double ratio =
        pool > 0 ? static_cast<double>(snap.lte_used + snap.wifi_used) / pool : 0.0;
    const double lte = state_bitrate(policy.lte_bitrate_bps, ratio, policy.sensitivity);
    return lte >= policy.wifi_bitrate_bps ? Decision::connect_lte : Decision::connect_wifi;
  }
  if (lte_room) return Decision::connect_lte;
  if (wifi_room) return Decision::connect_wifi;
  return Decision::blocked;
}

}  // namespace hetnet
