#pragma once

#include <span>
#include <string>
#include <vector>

#include "hetnet/state_space.hpp"

namespace hetnet {

struct LinkProfile {
  double subcarrier_bandwidth_hz = 1.4e6;  // B_sp
  double frequencies = 72;                 // K
  double symbol_rate = 6;                  // B
  double modulation_efficiency = 1.4766;   // E_i
  double bler = 0.0;

  std::vector<std::string> validate() const;
  friend bool operator==(const LinkProfile&, const LinkProfile&) = default;
};

struct SensitivityFactors {
  double lambda = 1.0;  // bit-rate coupling, in [0, 1]
  double theta = 1.0;   // blocking coupling, in [0, 1]
};

// B_sp * K * B * E_i * (1 - BLER), bits/s.
double instantaneous_bitrate(const LinkProfile& link);

// Congestion scaling 1 - factor * sqrt(ratio), floored at zero.
double congestion_scale(double occupancy_ratio, double factor);

double state_bitrate(double d_avg, double occupancy_ratio, double lambda);
double state_bitrate(double d_avg, const StateSpace& space, const OccupancyState& s, ZoneId zone,
                     double lambda);

// Erlang-B loss probability for offered load rho on `servers` servers,
// computed with the stable recurrence B(k) = rho B(k-1) / (k + rho B(k-1)).
double erlang_block(double rho, int servers);

double state_block(double p_block, double occupancy_ratio, double theta);
double state_block(double p_block, const StateSpace& space, const OccupancyState& s, ZoneId zone,
                   double theta);

// Weighting of the per-state averages for one zone. weights[k] is the
// demand rate of service k in the zone plus its transfer term; normalizer is
// the divisor of the weighted sum (the total weight by default).
struct ZoneWeights {
  ZoneId zone = ZoneId::subcell(2);
  std::vector<double> weights;
  double normalizer = 0.0;

  double total() const;
};

// Weighted average over states that can still admit a session of service k
// (sum of LTE units + N_PRB^k <= B_1^{uc}) of the state bit rate.
// `distribution` is indexed like the state space and may be any probability
// vector (stationary or empirical).
double mean_bitrate(std::span<const double> distribution, const StateSpace& space,
                    const ZoneWeights& w, double d_avg, double lambda);

// Weighted average over states that cannot admit a session of service k of
// the scaled blocking probability.
double mean_block(std::span<const double> distribution, const StateSpace& space,
                  const ZoneWeights& w, double p_block, double theta);

}  // namespace hetnet
