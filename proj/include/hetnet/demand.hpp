#pragma once

#include <string>
#include <vector>

#include "hetnet/mobility_rwp.hpp"

namespace hetnet {

struct ServiceProfile {
  int id = 1;
  double cluster_arrival_rate = 0.0;  // sessions/s over the whole cluster
  double mean_holding_time = 1.0;     // s
  int prb_demand = 1;                 // LTE bandwidth units per session

  std::vector<std::string> validate() const;
  friend bool operator==(const ServiceProfile&, const ServiceProfile&) = default;
};

// Share of the cluster demand arising in a zone.
double fresh_rate(double zone_probability, double cluster_rate);
// Users leaving C_0 per unit time. Throws DivisionByZero for a zero
// residence time.
double exit_flow(double p_c0, double residence_time);
// Shared form of the horizontal and vertical handover demands.
double handover_rate(double mean_users, double exit_flow);
// Little's-law mean number of sessions.
double mean_population(double zone_rate, double holding_time);

// Demand quantities for one service. Zone-indexed vectors follow the
// MobilityProfile layout (0 = C_0, i >= 2 sub-cells, 1 unused).
struct ServiceDemand {
  std::vector<double> fresh;    // lambda_{C_i}^{C(k)}
  double population_c0 = 0.0;   // u_{C_0}^k
  double exit_c0_cluster = 0.0; // eta_{C_0}^{C_1}
  std::vector<double> exit_c0_subcell;  // eta_{C_0}^{C_i}
  // Horizontal handover demand into N_1 (the LTE network over C_0); the
  // direction is "towards the LTE-only zone's network".
  double horizontal = 0.0;
  std::vector<double> vertical;  // tau^{V(k)} towards N_i, per sub-cell
};

struct DemandRates {
  std::vector<ServiceDemand> services;
};

DemandRates derive_demand(const MobilityProfile& mobility,
                          const std::vector<ServiceProfile>& services);

}  // namespace hetnet
