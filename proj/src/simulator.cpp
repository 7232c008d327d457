#include "hetnet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Entry and exit times of a leg's straight segment through a circle, or
// nothing when the segment misses it.
std::optional<std::pair<double, double>> circle_times(const Leg& leg, const SubCell& cell) {
  const double length = leg.length();
  if (length == 0.0) return std::nullopt;
  const Point c = cell.center();
  const double ux = (leg.to.x - leg.from.x) / length;
  const double uy = (leg.to.y - leg.from.y) / length;
  const double fx = leg.from.x - c.x;
  const double fy = leg.from.y - c.y;
  const double b = ux * fx + uy * fy;
  const double cc = fx * fx + fy * fy - cell.radius * cell.radius;
  const double disc = b * b - cc;
  if (disc <= 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double s1 = -b - root;
  const double s2 = -b + root;
  if (s2 <= 0.0 || s1 >= length) return std::nullopt;
  const double t1 = leg.depart + s1 / leg.speed;
  const double t2 = s2 >= length ? kInf : leg.depart + s2 / leg.speed;
  return std::make_pair(t1, t2);
}

}  // namespace

Point Leg::position_at(double t) const {
  if (t <= depart) return from;
  if (t >= arrive) return to;
  const double f = (t - depart) / (arrive - depart);
  return {from.x + f * (to.x - from.x), from.y + f * (to.y - from.y)};
}

UserAgent::UserAgent(const ClusterGeometry& geom, const RwpParams& rwp, bool mobile,
                     std::uint64_t seed, std::uint64_t id, double start_time)
    : geom_(&geom), rwp_(rwp), mobile_(mobile), rng_(make_rng(seed, id + 1)), clock_(start_time),
      stats_from_(start_time) {
  zone_time_.assign(static_cast<std::size_t>(geom.m()) + 1, 0.0);
  entries_.assign(static_cast<std::size_t>(geom.m()) + 1, 0);
  const Point start = uniform_point();
  if (mobile_) {
    legs_.push_back(draw_leg(start, start_time));
  } else {
    legs_.push_back(Leg{start, start, 0.0, start_time, kInf, kInf});
  }
  zone_ = geom.zone_of(start);
}

Point UserAgent::uniform_point() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = geom_->service_radius() * std::sqrt(u(rng_));
  const double a = 2.0 * std::numbers::pi * u(rng_);
  return {r * std::cos(a), r * std::sin(a)};
}

Leg UserAgent::draw_leg(const Point& from, double depart) {
  Leg leg;
  leg.from = from;
  leg.to = uniform_point();
  std::uniform_real_distribution<double> speed(rwp_.v_min, rwp_.v_max);
  leg.speed = rwp_.v_min == rwp_.v_max ? rwp_.v_max : speed(rng_);
  leg.depart = depart;
  leg.arrive = depart + leg.length() / leg.speed;
  double pause = 0.0;
  if (rwp_.pause_mean > 0.0) pause = std::exponential_distribution<double>(1.0 / rwp_.pause_mean)(rng_);
  leg.resume = leg.arrive + pause;
  return leg;
}

const Leg& UserAgent::leg_at(std::size_t i) {
  while (legs_.size() <= i) legs_.push_back(draw_leg(legs_.back().to, legs_.back().resume));
  return legs_[i];
}

void UserAgent::set_current_leg(const Leg& leg) {
  legs_.clear();
  legs_.push_back(leg);
  clock_ = leg.depart;
  zone_ = geom_->zone_of(leg.from);
}

Point UserAgent::position() const { return legs_.front().position_at(clock_); }
Point UserAgent::waypoint() const { return legs_.front().to; }
double UserAgent::speed() const { return legs_.front().speed; }
double UserAgent::pause_remaining() const {
  const Leg& leg = legs_.front();
  if (clock_ < leg.arrive) return leg.resume - leg.arrive;
  return std::isfinite(leg.resume) ? leg.resume - clock_ : 0.0;
}

void UserAgent::scan(const Leg& leg, double t_from, double t_to, ZoneId& zone,
                     std::vector<ZoneCrossing>& out, bool first_only) const {
  const double start = std::max(t_from, leg.depart);
  const double end = std::min(t_to, leg.arrive);
  if (!(end > start) || leg.length() == 0.0) return;

  struct Candidate {
    double time;
    int cell;
    bool entry;
  };
  std::vector<Candidate> found;
  for (int i = 2; i <= geom_->m(); ++i) {
    const auto times = circle_times(leg, geom_->subcell(i));
    // Inside the sub-cell over [t1, t2).
    const bool inside_at_start = times && times->first <= start && start < times->second;
    if (inside_at_start != (zone.value == i)) {
      // Tracked zone disagrees with the geometry at the window start (only
      // possible at a leg boundary lying on a circle); resynchronize.
      found.push_back({start, i, inside_at_start});
    }
    if (!times) continue;
    if (start < times->first && times->first <= end) found.push_back({times->first, i, true});
    if (start < times->second && times->second <= end) found.push_back({times->second, i, false});
  }
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return a.time != b.time ? a.time < b.time : (!a.entry && b.entry);
  });
  for (const Candidate& c : found) {
    const ZoneId cell = ZoneId::subcell(c.cell);
    if (c.entry && zone != cell) {
      out.push_back({c.time, zone, cell});
      zone = cell;
    } else if (!c.entry && zone == cell) {
      out.push_back({c.time, cell, ZoneId::lte_only()});
      zone = ZoneId::lte_only();
    } else {
      continue;
    }
    if (first_only) return;
  }
}

std::optional<ZoneCrossing> UserAgent::next_crossing() {
  if (!mobile_ || geom_->m() < 2) return std::nullopt;
  ZoneId zone = zone_;
  std::vector<ZoneCrossing> found;
  // A user crosses a sub-cell boundary within a handful of legs unless the
  // sub-cells are vanishingly small; the bound only guards against that.
  for (std::size_t i = 0; i < 1'000'000; ++i) {
    scan(leg_at(i), clock_, kInf, zone, found, true);
    if (!found.empty()) return found.front();
  }
  return std::nullopt;
}

void UserAgent::accumulate(double t0, double t1, ZoneId zone) {
  t0 = std::max(t0, stats_from_);
  if (t1 > t0) zone_time_[static_cast<std::size_t>(zone.value)] += t1 - t0;
}

std::vector<ZoneCrossing> UserAgent::step(double dt) {
  if (dt < 0.0) throw std::invalid_argument("negative mobility step");
  const double target = clock_ + dt;
  const ZoneId initial = zone_;
  std::vector<ZoneCrossing> events;
  while (true) {
    const Leg& leg = leg_at(0);
    scan(leg, clock_, target, zone_, events, false);
    if (leg.resume <= target) {
      legs_.pop_front();
      leg_at(0);
      continue;
    }
    break;
  }
  double t_prev = clock_;
  ZoneId z = initial;
  for (const ZoneCrossing& ev : events) {
    accumulate(t_prev, ev.time, z);
    if (!ev.to.is_lte_only() && ev.time >= stats_from_) {
      ++entries_[static_cast<std::size_t>(ev.to.value)];
    }
    t_prev = ev.time;
    z = ev.to;
  }
  accumulate(t_prev, target, z);
  clock_ = target;
  return events;
}

std::vector<ZoneCrossing> step_mobility(UserAgent& agent, double dt) { return agent.step(dt); }

std::vector<std::string> SimConfig::validate() const {
  std::vector<std::string> out = geometry.validate();
  if (mobility_enabled) {
    for (auto& v : rwp.validate()) out.push_back(std::move(v));
  }
  if (services.empty()) out.push_back("at least one service is required");
  for (const auto& s : services) {
    for (auto& v : s.validate()) out.push_back(std::move(v));
  }
  if (capacities.lte_units < 0) out.push_back("networks.lte_units must be >= 0");
  if (static_cast<int>(capacities.wifi_units.size()) != geometry.m() - 1) {
    out.push_back("networks.wifi_units needs one entry per sub-cell");
  }
  if (!reselection_rate.empty() &&
      static_cast<int>(reselection_rate.size()) != geometry.m() - 1) {
    out.push_back("reselection rate needs one entry per sub-cell");
  }
  if (users < 1) out.push_back("simulation.users must be >= 1");
  if (!(horizon > 0.0)) out.push_back("simulation.horizon must be > 0");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
    out.push_back("simulation.warmup_fraction must lie in [0, 1)");
  }
  return out;
}

namespace {

struct Session {
  int user = 0;
  int service = 0;
  bool on_wifi = false;
  ZoneId zone;
  std::uint64_t reselect_generation = 0;
};

enum class EventKind { arrival, departure, crossing, reselect };

struct Event {
  double time;
  std::uint64_t seq;
  EventKind kind;
  std::uint64_t key;         // service, session id or user id
  std::uint64_t generation;  // staleness check for crossings and reselections

  bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
};

class Engine {
 public:
  explicit Engine(const SimConfig& cfg)
      : cfg_(cfg), layout_(static_cast<int>(cfg.services.size()), cfg.geometry.m()),
        rng_(make_rng(cfg.seed, 0)), warmup_end_(cfg.horizon * cfg.warmup_fraction) {
    state_.units.assign(layout_.size(), 0);
    wifi_used_.assign(static_cast<std::size_t>(cfg.geometry.m()) + 1, 0);
    const auto zones = static_cast<std::size_t>(cfg.geometry.m()) + 1;
    report_.attempts.assign(zones, std::vector<std::uint64_t>(cfg.services.size(), 0));
    report_.blocked = report_.attempts;
    agents_.reserve(static_cast<std::size_t>(cfg.users));
    for (int u = 0; u < cfg.users; ++u) {
      agents_.emplace_back(cfg.geometry, cfg.rwp, cfg.mobility_enabled, cfg.seed,
                           static_cast<std::uint64_t>(u));
      agents_.back().collect_stats_from(warmup_end_);
    }
  }

  SimReport run() {
    for (std::size_t k = 0; k < cfg_.services.size(); ++k) schedule_arrival(k, 0.0);
    while (!queue_.empty() && queue_.top().time <= cfg_.horizon) {
      const Event ev = queue_.top();
      queue_.pop();
      advance_clock(ev.time);
      if (dispatch(ev)) ++report_.events;
      check_capacity();
    }
    advance_clock(cfg_.horizon);
    report_.lte_units_held = static_cast<std::uint64_t>(lte_used_);
    for (int w : wifi_used_) report_.wifi_units_held += static_cast<std::uint64_t>(w);
    finish_mobility();
    return std::move(report_);
  }

 private:
  bool observing() const { return now_ >= warmup_end_; }

  void push(double time, EventKind kind, std::uint64_t key, std::uint64_t generation = 0) {
    queue_.push({time, seq_++, kind, key, generation});
  }

  void advance_clock(double t) {
    const double from = std::max(now_, warmup_end_);
    if (t > from) {
      report_.state_time[state_] += t - from;
      report_.observed_time += t - from;
    }
    now_ = t;
  }

  bool dispatch(const Event& ev) {
    switch (ev.kind) {
      case EventKind::arrival:
        on_arrival(static_cast<std::size_t>(ev.key));
        return true;
      case EventKind::departure:
        return on_departure(ev.key);
      case EventKind::crossing: {
        UserAgent& agent = agents_[ev.key];
        if (ev.generation != agent.session_generation) return false;
        advance_user(static_cast<int>(ev.key));
        reschedule_crossing(static_cast<int>(ev.key));
        return true;
      }
      case EventKind::reselect:
        return on_reselect(ev.key, ev.generation);
    }
    return false;
  }

  void schedule_arrival(std::size_t k, double from) {
    const double rate = cfg_.services[k].cluster_arrival_rate;
    if (!(rate > 0.0)) return;
    push(from + std::exponential_distribution<double>(rate)(rng_), EventKind::arrival, k);
  }

  int prb(int k) const { return cfg_.services[static_cast<std::size_t>(k)].prb_demand; }

  CapacitySnapshot snapshot(ZoneId zone) const {
    CapacitySnapshot snap{lte_used_, cfg_.capacities.lte_units, 0, 0};
    if (!zone.is_lte_only()) {
      snap.wifi_used = wifi_used_[static_cast<std::size_t>(zone.value)];
      snap.wifi_capacity = cfg_.capacities.wifi(zone.value);
    }
    return snap;
  }

  void occupy(const Session& s, int sign) {
    if (s.on_wifi) {
      state_.units[layout_.wifi_slot(s.service, s.zone.value)] += sign;
      wifi_used_[static_cast<std::size_t>(s.zone.value)] += sign;
      ++(sign > 0 ? report_.wifi_units_acquired : report_.wifi_units_released);
    } else {
      const int n = prb(s.service);
      state_.units[layout_.lte_slot(s.service, s.zone)] += sign * n;
      lte_used_ += sign * n;
      (sign > 0 ? report_.lte_units_acquired : report_.lte_units_released) +=
          static_cast<std::uint64_t>(n);
    }
  }

  double reselection_rate(ZoneId zone) const {
    if (zone.is_lte_only() || cfg_.reselection_rate.empty()) return 0.0;
    return cfg_.reselection_rate[static_cast<std::size_t>(zone.value - 2)];
  }

  void schedule_reselect(std::uint64_t id, Session& s) {
    ++s.reselect_generation;
    const double rate = reselection_rate(s.zone);
    if (rate > 0.0) {
      push(now_ + std::exponential_distribution<double>(rate)(rng_), EventKind::reselect, id,
           s.reselect_generation);
    }
  }

  void reschedule_crossing(int user) {
    UserAgent& agent = agents_[static_cast<std::size_t>(user)];
    ++agent.session_generation;
    if (agent.sessions.empty()) return;
    if (auto next = agent.next_crossing()) {
      push(next->time, EventKind::crossing, static_cast<std::uint64_t>(user),
           agent.session_generation);
    }
  }

  // Moves the user to the current time and carries its sessions through
  // every zone change on the way. Returns whether any change happened.
  bool advance_user(int user) {
    UserAgent& agent = agents_[static_cast<std::size_t>(user)];
    const auto crossings = agent.step(now_ - agent.clock());
    if (agent.sessions.empty()) return false;
    for (const ZoneCrossing& c : crossings) {
      const std::vector<std::uint64_t> ids = agent.sessions;
      for (std::uint64_t id : ids) hand_over(id, c);
    }
    return !crossings.empty();
  }

  void hand_over(std::uint64_t id, const ZoneCrossing& c) {
    Session& s = sessions_.at(id);
    const int n = prb(s.service);
    occupy(s, -1);
    if (c.to.is_lte_only()) {
      if (s.on_wifi) {
        if (lte_used_ + n > cfg_.capacities.lte_units) {
          if (observing()) ++report_.connection_losses;
          drop(id);
          return;
        }
        if (observing()) ++report_.vertical_handovers;
      } else if (observing()) {
        ++report_.horizontal_handovers;
      }
      s.on_wifi = false;
    } else {
      const Decision d = select_network(c.to, snapshot(c.to), n, cfg_.policy);
      if (d == Decision::blocked) {
        if (observing()) ++report_.connection_losses;
        drop(id);
        return;
      }
      const bool wifi = d == Decision::connect_wifi;
      if (observing()) ++(wifi != s.on_wifi ? report_.vertical_handovers : report_.horizontal_handovers);
      s.on_wifi = wifi;
    }
    s.zone = c.to;
    occupy(s, +1);
    schedule_reselect(id, s);
  }

  void drop(std::uint64_t id) {
    const Session& s = sessions_.at(id);
    auto& list = agents_[static_cast<std::size_t>(s.user)].sessions;
    list.erase(std::find(list.begin(), list.end(), id));
    sessions_.erase(id);
  }

  void on_arrival(std::size_t k) {
    schedule_arrival(k, now_);
    std::uniform_int_distribution<int> pick(0, cfg_.users - 1);
    const int user = pick(rng_);
    if (advance_user(user)) reschedule_crossing(user);
    UserAgent& agent = agents_[static_cast<std::size_t>(user)];
    const ZoneId zone = agent.zone();
    const int service = static_cast<int>(k);
    const Decision d = select_network(zone, snapshot(zone), prb(service), cfg_.policy);
    const auto z = static_cast<std::size_t>(zone.value);
    if (observing()) ++report_.attempts[z][k];
    if (d == Decision::blocked) {
      if (observing()) ++report_.blocked[z][k];
      return;
    }
    const std::uint64_t id = next_session_++;
    Session& s = sessions_[id];
    s.user = user;
    s.service = service;
    s.on_wifi = d == Decision::connect_wifi;
    s.zone = zone;
    occupy(s, +1);
    const double hold = cfg_.services[k].mean_holding_time;
    push(now_ + std::exponential_distribution<double>(1.0 / hold)(rng_), EventKind::departure, id);
    schedule_reselect(id, s);
    agent.sessions.push_back(id);
    if (agent.sessions.size() == 1) reschedule_crossing(user);
  }

  bool on_departure(std::uint64_t id) {
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return false;  // lost during a handover
    const int user = it->second.user;
    occupy(it->second, -1);
    drop(id);
    if (agents_[static_cast<std::size_t>(user)].sessions.empty()) {
      ++agents_[static_cast<std::size_t>(user)].session_generation;
    }
    return true;
  }

  bool on_reselect(std::uint64_t id, std::uint64_t generation) {
    const auto it = sessions_.find(id);
    if (it == sessions_.end() || it->second.reselect_generation != generation) return false;
    Session& s = it->second;
    // Keep the user's zone current before acting on it.
    const int user = s.user;
    if (advance_user(user)) {
      reschedule_crossing(user);
      return true;
    }
    occupy(s, -1);
    const Decision d = select_network(s.zone, snapshot(s.zone), prb(s.service), cfg_.policy);
    const bool wifi = d == Decision::connect_wifi;
    if (d != Decision::blocked && wifi != s.on_wifi) {
      s.on_wifi = wifi;
      if (observing()) ++report_.network_switches;
    }
    occupy(s, +1);
    schedule_reselect(id, s);
    return true;
  }

  void check_capacity() const {
    bool ok = lte_used_ >= 0 && lte_used_ <= cfg_.capacities.lte_units;
    for (int i = 2; i <= cfg_.geometry.m(); ++i) {
      const int w = wifi_used_[static_cast<std::size_t>(i)];
      ok = ok && w >= 0 && w <= cfg_.capacities.wifi(i);
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "capacity violated at t=" << now_ << " in state " << layout_.describe(state_);
      throw std::logic_error(msg.str());
    }
  }

  void finish_mobility() {
    const auto zones = static_cast<std::size_t>(cfg_.geometry.m()) + 1;
    report_.zone_user_time.assign(zones, 0.0);
    report_.subcell_entries.assign(zones, 0);
    for (UserAgent& agent : agents_) {
      agent.step(cfg_.horizon - agent.clock());
      for (std::size_t z = 0; z < zones; ++z) {
        report_.zone_user_time[z] += agent.zone_time()[z];
        report_.subcell_entries[z] += agent.entries()[z];
      }
    }
    report_.user_time = (cfg_.horizon - warmup_end_) * cfg_.users;
  }

  const SimConfig& cfg_;
  StateLayout layout_;
  std::mt19937_64 rng_;
  double warmup_end_;
  double now_ = 0.0;
  std::uint64_t seq_ = 0;
  std::uint64_t next_session_ = 0;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::vector<UserAgent> agents_;
  std::unordered_map<std::uint64_t, Session> sessions_;
  OccupancyState state_;
  int lte_used_ = 0;
  std::vector<int> wifi_used_;
  SimReport report_;
};

}  // namespace

SimReport run(const SimConfig& config) {
  const auto problems = config.validate();
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "invalid simulation config:";
    for (const auto& p : problems) msg << "\n  " << p;
    throw ConfigInvalid(msg.str());
  }
  return Engine(config).run();
}

SimReport run_replications(const SimConfig& config, int replications) {
  if (replications < 1) throw ConfigInvalid("replications must be >= 1");
  SimReport merged;
  for (int r = 0; r < replications; ++r) {
    SimConfig rep = config;
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    rep.seed = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    if (r == 0) {
      merged = run(rep);
    } else {
      merged.merge(run(rep));
    }
  }
  return merged;
}

std::vector<double> SimReport::frequencies(const StateSpace& space) const {
  std::vector<double> out(space.size(), 0.0);
  if (!(observed_time > 0.0)) return out;
  for (const auto& [state, time] : state_time) {
    const auto idx = space.index_of(state);
    if (!idx) throw std::logic_error("simulated state outside the analytic state space");
    out[*idx] = time / observed_time;
  }
  return out;
}

std::optional<double> SimReport::blocking_ratio(int zone) const {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  for (std::size_t k = 0; k < attempts.at(static_cast<std::size_t>(zone)).size(); ++k) {
    a += attempts[static_cast<std::size_t>(zone)][k];
    b += blocked[static_cast<std::size_t>(zone)][k];
  }
  if (a == 0) return std::nullopt;
  return static_cast<double>(b) / static_cast<double>(a);
}

std::optional<double> SimReport::blocking_ratio(int zone, int service) const {
  const auto a = attempts.at(static_cast<std::size_t>(zone)).at(static_cast<std::size_t>(service));
  if (a == 0) return std::nullopt;
  return static_cast<double>(blocked[static_cast<std::size_t>(zone)][static_cast<std::size_t>(service)]) /
         static_cast<double>(a);
}

double SimReport::zone_fraction(int zone) const {
  return user_time > 0.0 ? zone_user_time.at(static_cast<std::size_t>(zone)) / user_time : 0.0;
}

double SimReport::entry_rate(int subcell) const {
  return user_time > 0.0
             ? static_cast<double>(subcell_entries.at(static_cast<std::size_t>(subcell))) / user_time
             : 0.0;
}

double SimReport::mean_sojourn(int subcell) const {
  const auto n = subcell_entries.at(static_cast<std::size_t>(subcell));
  return n > 0 ? zone_user_time[static_cast<std::size_t>(subcell)] / static_cast<double>(n) : 0.0;
}

void SimReport::merge(const SimReport& other) {
  for (const auto& [state, time] : other.state_time) state_time[state] += time;
  observed_time += other.observed_time;
  auto add_matrix = [](auto& into, const auto& from) {
    if (into.empty()) {
      into = from;
      return;
    }
    for (std::size_t z = 0; z < from.size(); ++z) {
      for (std::size_t k = 0; k < from[z].size(); ++k) into[z][k] += from[z][k];
    }
  };
  add_matrix(attempts, other.attempts);
  add_matrix(blocked, other.blocked);
  horizontal_handovers += other.horizontal_handovers;
  vertical_handovers += other.vertical_handovers;
  connection_losses += other.connection_losses;
  network_switches += other.network_switches;
  events += other.events;
  lte_units_acquired += other.lte_units_acquired;
  lte_units_released += other.lte_units_released;
  wifi_units_acquired += other.wifi_units_acquired;
  wifi_units_released += other.wifi_units_released;
  lte_units_held += other.lte_units_held;
  wifi_units_held += other.wifi_units_held;
  if (zone_user_time.empty()) {
    zone_user_time = other.zone_user_time;
    subcell_entries = other.subcell_entries;
  } else {
    for (std::size_t z = 0; z < other.zone_user_time.size(); ++z) {
      zone_user_time[z] += other.zone_user_time[z];
      subcell_entries[z] += other.subcell_entries[z];
    }
  }
  user_time += other.user_time;
}

MobilityStats trace_mobility(const ClusterGeometry& geom, const RwpParams& rwp, std::uint64_t legs,
                             std::uint64_t seed, std::uint64_t burn_in) {
  UserAgent agent(geom, rwp, true, seed, 0);
  for (std::uint64_t l = 0; l < burn_in; ++l) agent.step(agent.current_leg().resume - agent.clock());
  const double start = agent.clock();
  agent.collect_stats_from(start);
  for (std::uint64_t l = 0; l < legs; ++l) agent.step(agent.current_leg().resume - agent.clock());

  MobilityStats out;
  out.observed_time = agent.clock() - start;
  const auto zones = static_cast<std::size_t>(geom.m()) + 1;
  out.zone_fraction.assign(zones, 0.0);
  out.entry_rate.assign(zones, 0.0);
  out.mean_sojourn.assign(zones, 0.0);
  out.entries = agent.entries();
  for (std::size_t z = 0; z < zones; ++z) {
    out.zone_fraction[z] = agent.zone_time()[z] / out.observed_time;
    out.entry_rate[z] = static_cast<double>(out.entries[z]) / out.observed_time;
    if (out.entries[z] > 0) out.mean_sojourn[z] = agent.zone_time()[z] / static_cast<double>(out.entries[z]);
  }
  return out;
}

double calibrate_cv(const ClusterGeometry& geom, int subcell, const RwpParams& rwp,
                    const MobilityStats& trace, const SpatialDensity& density) {
  RwpParams unit = rwp;
  unit.c_v = 1.0;
  const double analytic = arrival_rate(geom, subcell, density, unit);
  const double observed = trace.entry_rate.at(static_cast<std::size_t>(subcell));
  if (!(observed > 0.0)) throw DivisionByZero("no sub-cell entries observed; cannot calibrate C_v");
  return analytic / observed;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in size");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

}  // namespace hetnet
