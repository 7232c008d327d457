#include "hetnet/demand.hpp"

#include <cmath>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

std::vector<std::string> ServiceProfile::validate() const {
  std::vector<std::string> out;
  const std::string name = "service " + std::to_string(id);
  if (!(cluster_arrival_rate >= 0.0) || !std::isfinite(cluster_arrival_rate)) {
    out.push_back(name + ": arrival_rate must be finite and >= 0");
  }
  if (!(mean_holding_time > 0.0) || !std::isfinite(mean_holding_time)) {
    out.push_back(name + ": holding_time must be finite and > 0");
  }
  if (prb_demand < 1) out.push_back(name + ": prb_demand must be >= 1");
  return out;
}

double fresh_rate(double zone_probability, double cluster_rate) {
  return zone_probability * cluster_rate;
}

double exit_flow(double p_c0, double residence_time) {
  if (residence_time == 0.0) {
    throw DivisionByZero("exit flow undefined for a zero residence time");
  }
  return p_c0 / residence_time;
}

double handover_rate(double mean_users, double exit_flow) { return mean_users * exit_flow; }

double mean_population(double zone_rate, double holding_time) { return zone_rate * holding_time; }

DemandRates derive_demand(const MobilityProfile& mobility,
                          const std::vector<ServiceProfile>& services) {
  DemandRates out;
  const std::size_t zones = mobility.probability.size();
  for (const ServiceProfile& svc : services) {
    ServiceDemand d;
    d.fresh.assign(zones, 0.0);
    d.exit_c0_subcell.assign(zones, 0.0);
    d.vertical.assign(zones, 0.0);
    for (std::size_t z = 0; z < zones; ++z) {
      if (z == 1) continue;
      d.fresh[z] = fresh_rate(mobility.probability[z], svc.cluster_arrival_rate);
    }
    d.population_c0 = mean_population(d.fresh[0], svc.mean_holding_time);

    // A closed cluster with no sub-cell has nowhere to hand over to.
    const double delta_c0 = mobility.residence_time[0];
    d.exit_c0_cluster = std::isfinite(delta_c0) ? exit_flow(mobility.p_c0(), delta_c0) : 0.0;
    d.horizontal = handover_rate(d.population_c0, d.exit_c0_cluster);
    for (std::size_t z = 2; z < zones; ++z) {
      d.exit_c0_subcell[z] = exit_flow(mobility.p_c0(), mobility.residence_time[z]);
      d.vertical[z] = handover_rate(d.population_c0, d.exit_c0_subcell[z]);
    }
    out.services.push_back(std::move(d));
  }
  return out;
}

}  // namespace hetnet
