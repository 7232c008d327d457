#include "hetnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hetnet {

std::vector<std::string> LinkProfile::validate() const {
  std::vector<std::string> out;
  if (!(subcarrier_bandwidth_hz >= 0.0)) out.push_back("link.subcarrier_bandwidth_hz must be >= 0");
  if (!(frequencies >= 0.0)) out.push_back("link.frequencies must be >= 0");
  if (!(symbol_rate >= 0.0)) out.push_back("link.symbol_rate must be >= 0");
  if (!(modulation_efficiency >= 0.0)) out.push_back("link.modulation_efficiency must be >= 0");
  if (!(bler >= 0.0 && bler <= 1.0)) out.push_back("link.bler must lie in [0, 1]");
  return out;
}

double instantaneous_bitrate(const LinkProfile& link) {
  const double subcarriers =
      link.frequencies * link.symbol_rate * link.modulation_efficiency * (1.0 - link.bler);
  return link.subcarrier_bandwidth_hz * subcarriers;
}

double congestion_scale(double occupancy_ratio, double factor) {
  const double ratio = std::clamp(occupancy_ratio, 0.0, 1.0);
  return std::max(0.0, 1.0 - factor * std::sqrt(ratio));
}

double state_bitrate(double d_avg, double occupancy_ratio, double lambda) {
  return d_avg * congestion_scale(occupancy_ratio, lambda);
}

double state_bitrate(double d_avg, const StateSpace& space, const OccupancyState& s, ZoneId zone,
                     double lambda) {
  return state_bitrate(d_avg, space.layout().occupancy_ratio(s, space.capacities(), zone), lambda);
}

double erlang_block(double rho, int servers) {
  if (rho < 0.0) throw std::domain_error("offered load must be >= 0");
  if (servers < 1) throw std::domain_error("Erlang-B needs at least one server");
  double b = 1.0;
  for (int k = 1; k <= servers; ++k) b = rho * b / (k + rho * b);
  return b;
}

double state_block(double p_block, double occupancy_ratio, double theta) {
  return p_block * congestion_scale(occupancy_ratio, theta);
}

double state_block(double p_block, const StateSpace& space, const OccupancyState& s, ZoneId zone,
                   double theta) {
  return state_block(p_block, space.layout().occupancy_ratio(s, space.capacities(), zone), theta);
}

double ZoneWeights::total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

namespace {

template <class PerState>
double weighted_sum(std::span<const double> distribution, const StateSpace& space,
                    const ZoneWeights& w, bool admitting, PerState value) {
  if (distribution.size() != space.size()) {
    throw std::invalid_argument("distribution does not match the state space");
  }
  if (w.weights.size() != space.prb_demand().size()) {
    throw std::invalid_argument("one weight per service is required");
  }
  if (!(w.normalizer > 0.0)) return 0.0;
  const int pool = space.capacities().lte_units;
  double sum = 0.0;
  for (std::size_t k = 0; k < w.weights.size(); ++k) {
    const int n = space.prb_demand()[k];
    double inner = 0.0;
    for (std::size_t e = 0; e < space.size(); ++e) {
      if (distribution[e] == 0.0) continue;
      const bool admits = space.layout().total_lte(space[e]) + n <= pool;
      if (admits == admitting) inner += distribution[e] * value(space[e]);
    }
    sum += w.weights[k] * inner;
  }
  return sum / w.normalizer;
}

}  // namespace

double mean_bitrate(std::span<const double> distribution, const StateSpace& space,
                    const ZoneWeights& w, double d_avg, double lambda) {
  return weighted_sum(distribution, space, w, true, [&](const OccupancyState& s) {
    return state_bitrate(d_avg, space, s, w.zone, lambda);
  });
}

double mean_block(std::span<const double> distribution, const StateSpace& space,
                  const ZoneWeights& w, double p_block, double theta) {
  return weighted_sum(distribution, space, w, false, [&](const OccupancyState& s) {
    return state_block(p_block, space, s, w.zone, theta);
  });
}

}  // namespace hetnet
