#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hetnet/demand.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/mobility_rwp.hpp"
#include "hetnet/selection.hpp"
#include "hetnet/state_space.hpp"

namespace hetnet {

struct ZoneCrossing {
  double time = 0.0;
  ZoneId from;
  ZoneId to;
};

// One straight movement epoch followed by its pause.
struct Leg {
  Point from;
  Point to;
  double speed = 0.0;
  double depart = 0.0;
  double arrive = 0.0;
  double resume = 0.0;  // arrive + pause

  double length() const { return distance(from, to); }
  Point position_at(double t) const;
};

// RWP user. Future legs are drawn on demand from the user's own generator,
// so looking ahead for the next crossing never perturbs the trajectory.
class UserAgent {
 public:
  UserAgent(const ClusterGeometry& geom, const RwpParams& rwp, bool mobile, std::uint64_t seed,
            std::uint64_t id, double start_time = 0.0);

  double clock() const { return clock_; }
  ZoneId zone() const { return zone_; }
  Point position() const;
  Point waypoint() const;
  double speed() const;
  double pause_remaining() const;
  const Leg& current_leg() const { return legs_.front(); }

  // Start accumulating zone time and sub-cell entries from `t` on.
  void collect_stats_from(double t) { stats_from_ = t; }
  const std::vector<double>& zone_time() const { return zone_time_; }
  const std::vector<std::uint64_t>& entries() const { return entries_; }

  // Next zone change strictly after the current clock, if the user moves.
  std::optional<ZoneCrossing> next_crossing();

  // Advance the clock by dt and return every zone change in (clock, clock+dt]
  // in time order.
  std::vector<ZoneCrossing> step(double dt);

  // The leg vector is drawn for the first time at construction; this lets
  // tests pin a specific leg.
  void set_current_leg(const Leg& leg);

  std::uint64_t session_generation = 0;
  std::vector<std::uint64_t> sessions;

 private:
  Leg draw_leg(const Point& from, double depart);
  Point uniform_point();
  const Leg& leg_at(std::size_t i);
  void scan(const Leg& leg, double t_from, double t_to, ZoneId& zone,
            std::vector<ZoneCrossing>& out, bool first_only) const;
  void accumulate(double t0, double t1, ZoneId zone);

  const ClusterGeometry* geom_;
  RwpParams rwp_;
  bool mobile_;
  std::mt19937_64 rng_;
  std::deque<Leg> legs_;
  double clock_ = 0.0;
  ZoneId zone_;
  double stats_from_ = 0.0;
  std::vector<double> zone_time_;
  std::vector<std::uint64_t> entries_;
};

// Advances `agent` by dt; returns the zone-crossing events in order.
std::vector<ZoneCrossing> step_mobility(UserAgent& agent, double dt);

struct SimConfig {
  ClusterGeometry geometry;
  RwpParams rwp;
  bool mobility_enabled = true;
  std::vector<ServiceProfile> services;
  Capacities capacities;
  SelectionPolicy policy;
  // Per-session rate (1/s) at which a session inside sub-cell i re-runs the
  // selection rule; reselection_rate[i - 2]. Empty disables reselection.
  std::vector<double> reselection_rate;
  int users = 200;
  double horizon = 1000.0;
  double warmup_fraction = 0.1;
  std::uint64_t seed = 1;

  std::vector<std::string> validate() const;
};

struct SimReport {
  // Time spent in each occupancy state during the observation window.
  std::map<OccupancyState, double> state_time;
  double observed_time = 0.0;
  // [zone][service]; zone index 0 = C_0, i >= 2 sub-cells.
  std::vector<std::vector<std::uint64_t>> attempts;
  std::vector<std::vector<std::uint64_t>> blocked;
  std::uint64_t horizontal_handovers = 0;
  std::uint64_t vertical_handovers = 0;
  std::uint64_t connection_losses = 0;
  std::uint64_t network_switches = 0;
  std::uint64_t events = 0;
  // Unit bookkeeping over the whole run, warm-up included: acquired minus
  // released equals what is held when the horizon is reached.
  std::uint64_t lte_units_acquired = 0;
  std::uint64_t lte_units_released = 0;
  std::uint64_t wifi_units_acquired = 0;
  std::uint64_t wifi_units_released = 0;
  std::uint64_t lte_units_held = 0;
  std::uint64_t wifi_units_held = 0;
  // Mobility statistics summed over all users.
  std::vector<double> zone_user_time;
  std::vector<std::uint64_t> subcell_entries;
  double user_time = 0.0;

  // Empirical state distribution over `space`; states never visited get 0.
  // Throws when the simulation visited a state outside the space.
  std::vector<double> frequencies(const StateSpace& space) const;
  // blocked / attempts, nullopt when the zone saw no attempt.
  std::optional<double> blocking_ratio(int zone) const;
  std::optional<double> blocking_ratio(int zone, int service) const;
  double zone_fraction(int zone) const;
  double entry_rate(int subcell) const;    // per user per second
  double mean_sojourn(int subcell) const;  // seconds

  // Associative merge of independent replications.
  void merge(const SimReport& other);
};

// Deterministic given config.seed.
SimReport run(const SimConfig& config);

// Replications with seeds derived from (seed, replication index), merged in
// index order.
SimReport run_replications(const SimConfig& config, int replications);

// Single-user trajectory statistics over `legs` movement epochs after
// `burn_in` epochs.
struct MobilityStats {
  std::vector<double> zone_fraction;     // 0 = C_0, i >= 2 sub-cells
  std::vector<double> entry_rate;        // per second
  std::vector<double> mean_sojourn;      // seconds
  std::vector<std::uint64_t> entries;
  double observed_time = 0.0;
};

MobilityStats trace_mobility(const ClusterGeometry& geom, const RwpParams& rwp, std::uint64_t legs,
                             std::uint64_t seed, std::uint64_t burn_in = 1000);

// Least-squares C_v for one sub-cell: the value that makes the analytic
// arrival rate equal the traced entry rate.
double calibrate_cv(const ClusterGeometry& geom, int subcell, const RwpParams& rwp,
                    const MobilityStats& trace, const SpatialDensity& density = default_density());

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace hetnet
