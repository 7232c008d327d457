#include "hetnet/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::bler: return "bler";
    case SweepVariable::occupancy: return "occupancy";
    case SweepVariable::offered_load: return "offered_load";
    case SweepVariable::lambda_factor: return "lambda_factor";
  }
  return "?";
}

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::analytic: return "analytic";
    case RunMode::simulate: return "simulate";
    case RunMode::both: return "both";
  }
  return "?";
}

std::vector<double> SweepSpec::points() const {
  std::vector<double> out;
  if (steps < 1) return out;
  if (steps == 1) return {start};
  out.reserve(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps; ++s) {
    // Exact endpoints; interior points by linear interpolation.
    out.push_back(s == steps - 1 ? stop : start + (stop - start) * s / (steps - 1));
  }
  return out;
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& field, const std::string& msg) { out.push_back(field + ": " + msg); };
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };

  for (const auto& v : geometry.validate()) out.push_back("geometry: " + v);
  for (const auto& v : mobility.validate()) out.push_back(v);
  if (services.empty()) add("services", "at least one service is required");
  for (std::size_t k = 0; k < services.size(); ++k) {
    for (const auto& v : services[k].validate()) out.push_back("services[" + std::to_string(k) + "] " + v);
  }
  const auto& caps = networks.capacities;
  if (caps.lte_units < 1) add("networks.lte_units", "must be >= 1");
  if (static_cast<int>(caps.wifi_units.size()) != geometry.m() - 1) {
    add("networks.wifi_units", "needs one entry per sub-cell");
  }
  for (int w : caps.wifi_units) {
    if (w < 0) add("networks.wifi_units", "entries must be >= 0");
  }
  if (!(networks.wifi_bitrate_bps >= 0.0)) add("networks.wifi_bitrate_bps", "must be >= 0");
  if (!in_unit(networks.switch_probability)) add("networks.switch_probability", "must lie in [0, 1]");
  if (!in_unit(networks.selection_sensitivity)) add("networks.selection_sensitivity", "must lie in [0, 1]");
  for (const auto& v : link.validate()) out.push_back(v);
  if (sensitivity.lambda.empty()) add("sensitivity.lambda", "needs at least one value");
  if (sensitivity.theta.empty()) add("sensitivity.theta", "needs at least one value");
  for (double v : sensitivity.lambda) {
    if (!in_unit(v)) add("sensitivity.lambda", "values must lie in [0, 1]");
  }
  for (double v : sensitivity.theta) {
    if (!in_unit(v)) add("sensitivity.theta", "values must lie in [0, 1]");
  }

  if (sweep.steps < 2) add("sweep.steps", "must be >= 2");
  if (!(std::isfinite(sweep.start) && std::isfinite(sweep.stop))) add("sweep", "range must be finite");
  switch (sweep.variable) {
    case SweepVariable::bler:
    case SweepVariable::occupancy:
    case SweepVariable::lambda_factor:
      if (!in_unit(sweep.start) || !in_unit(sweep.stop)) {
        add("sweep", std::string("range must lie in [0, 1] for ") + to_string(sweep.variable));
      }
      break;
    case SweepVariable::offered_load:
      if (!(sweep.start >= 0.0 && sweep.stop >= 0.0)) add("sweep", "offered load must be >= 0");
      break;
  }
  if (!in_unit(sweep.fixed_occupancy)) add("sweep.fixed_occupancy", "must lie in [0, 1]");
  if (sweep.zone != 0 && (sweep.zone < 2 || sweep.zone > geometry.m())) {
    add("sweep.zone", "must be 0 (C_0) or a sub-cell index 2..m");
  }

  if (simulation.users < 1) add("simulation.users", "must be >= 1");
  if (!(simulation.horizon_s > 0.0)) add("simulation.horizon_s", "must be > 0");
  if (!(simulation.warmup_fraction >= 0.0 && simulation.warmup_fraction < 1.0)) {
    add("simulation.warmup_fraction", "must lie in [0, 1)");
  }
  if (simulation.replications < 1) add("simulation.replications", "must be >= 1");
  if (model.state_cap < 1) add("model.state_cap", "must be >= 1");
  return out;
}

void ExperimentConfig::require_valid() const {
  const auto problems = validate();
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid configuration:";
  for (const auto& p : problems) msg << "\n  " << p;
  throw ConfigInvalid(msg.str());
}

namespace {

// Reads one mapping, remembering which keys were consumed so leftovers can be
// reported as unknown.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ && !node_.IsMap()) fail(path_, "expected a mapping");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!node_) return;
    const YAML::Node v = node_[key];
    if (!v) return;
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      fail(field(key), "malformed value '" + scalar(v) + "'");
    }
  }

  template <typename T>
  void read_list(const char* key, std::vector<T>& out) {
    seen_.insert(key);
    if (!node_) return;
    const YAML::Node v = node_[key];
    if (!v) return;
    if (!v.IsSequence()) fail(field(key), "expected a list");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      try {
        out.push_back(v[i].as<T>());
      } catch (const YAML::Exception&) {
        fail(field(key) + "[" + std::to_string(i) + "]", "malformed value '" + scalar(v[i]) + "'");
      }
    }
  }

  YAML::Node child(const char* key) {
    seen_.insert(key);
    return node_ ? node_[key] : YAML::Node();
  }

  void finish() const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) fail(field(key.c_str()), "unknown key");
    }
  }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] static void fail(const std::string& field, const std::string& msg) {
    throw ConfigInvalid(field + ": " + msg);
  }

 private:
  static std::string scalar(const YAML::Node& n) { return n.IsScalar() ? n.Scalar() : "<structure>"; }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename E>
E parse_enum(const std::string& field, const std::string& text, std::initializer_list<E> options) {
  for (E e : options) {
    if (text == to_string(e)) return e;
  }
  Section::fail(field, "unknown value '" + text + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigInvalid(std::string("malformed YAML: ") + e.what());
  }
  if (!root || root.IsNull()) throw ConfigInvalid("empty configuration");
  Section top(root, "");
  ExperimentConfig cfg;

  {
    Section s(top.child("geometry"), "geometry");
    double radius = 0.0;
    s.read("service_radius_m", radius);
    std::vector<SubCell> cells;
    const YAML::Node list = s.child("subcells");
    if (list) {
      if (!list.IsSequence()) Section::fail("geometry.subcells", "expected a list");
      for (std::size_t i = 0; i < list.size(); ++i) {
        Section c(list[i], "geometry.subcells[" + std::to_string(i) + "]");
        SubCell cell;
        c.read("radius_m", cell.radius);
        c.read("center_distance_m", cell.center_distance);
        c.read("center_angle_rad", cell.center_angle);
        c.finish();
        cells.push_back(cell);
      }
    }
    s.finish();
    cfg.geometry = ClusterGeometry(radius, std::move(cells));
  }
  {
    Section s(top.child("mobility"), "mobility");
    s.read("v_min_mps", cfg.mobility.v_min);
    s.read("v_max_mps", cfg.mobility.v_max);
    s.read("pause_mean_s", cfg.mobility.pause_mean);
    s.read("c_v", cfg.mobility.c_v);
    s.finish();
  }
  {
    const YAML::Node list = top.child("services");
    if (list) {
      if (!list.IsSequence()) Section::fail("services", "expected a list");
      for (std::size_t i = 0; i < list.size(); ++i) {
        Section c(list[i], "services[" + std::to_string(i) + "]");
        ServiceProfile sp;
        sp.id = static_cast<int>(i) + 1;
        c.read("id", sp.id);
        c.read("arrival_rate", sp.cluster_arrival_rate);
        c.read("holding_time_s", sp.mean_holding_time);
        c.read("prb_demand", sp.prb_demand);
        c.finish();
        cfg.services.push_back(sp);
      }
    }
  }
  {
    Section s(top.child("networks"), "networks");
    s.read("lte_units", cfg.networks.capacities.lte_units);
    s.read_list("wifi_units", cfg.networks.capacities.wifi_units);
    s.read("wifi_bitrate_bps", cfg.networks.wifi_bitrate_bps);
    s.read("switch_probability", cfg.networks.switch_probability);
    s.read("selection_sensitivity", cfg.networks.selection_sensitivity);
    s.finish();
  }
  {
    Section s(top.child("link"), "link");
    s.read("subcarrier_bandwidth_hz", cfg.link.subcarrier_bandwidth_hz);
    s.read("frequencies", cfg.link.frequencies);
    s.read("symbol_rate", cfg.link.symbol_rate);
    s.read("modulation_efficiency", cfg.link.modulation_efficiency);
    s.read("bler", cfg.link.bler);
    s.finish();
  }
  {
    Section s(top.child("sensitivity"), "sensitivity");
    s.read_list("lambda", cfg.sensitivity.lambda);
    s.read_list("theta", cfg.sensitivity.theta);
    s.finish();
  }
  {
    Section s(top.child("sweep"), "sweep");
    std::string variable = to_string(cfg.sweep.variable);
    std::string mode = to_string(cfg.sweep.mode);
    s.read("variable", variable);
    s.read("start", cfg.sweep.start);
    s.read("stop", cfg.sweep.stop);
    s.read("steps", cfg.sweep.steps);
    s.read("mode", mode);
    s.read("zone", cfg.sweep.zone);
    s.read("fixed_occupancy", cfg.sweep.fixed_occupancy);
    s.finish();
    cfg.sweep.variable = parse_enum(s.field("variable"), variable,
                                    {SweepVariable::bler, SweepVariable::occupancy,
                                     SweepVariable::offered_load, SweepVariable::lambda_factor});
    cfg.sweep.mode = parse_enum(s.field("mode"), mode, {RunMode::analytic, RunMode::simulate, RunMode::both});
  }
  {
    Section s(top.child("simulation"), "simulation");
    s.read("users", cfg.simulation.users);
    s.read("horizon_s", cfg.simulation.horizon_s);
    s.read("warmup_fraction", cfg.simulation.warmup_fraction);
    s.read("seed", cfg.simulation.seed);
    s.read("replications", cfg.simulation.replications);
    s.read("mobility", cfg.simulation.mobility);
    s.finish();
  }
  {
    Section s(top.child("model"), "model");
    std::string law = to_string(cfg.model.rate_law);
    s.read("rate_law", law);
    s.read("state_cap", cfg.model.state_cap);
    s.finish();
    cfg.model.rate_law = parse_enum(s.field("rate_law"), law, {RateLaw::printed, RateLaw::kinetic});
  }
  top.finish();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "service_radius_m" << YAML::Value << cfg.geometry.service_radius();
  out << YAML::Key << "subcells" << YAML::Value << YAML::BeginSeq;
  for (const auto& c : cfg.geometry.subcells()) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "radius_m" << YAML::Value << c.radius;
    out << YAML::Key << "center_distance_m" << YAML::Value << c.center_distance;
    out << YAML::Key << "center_angle_rad" << YAML::Value << c.center_angle;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "mobility" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "v_min_mps" << YAML::Value << cfg.mobility.v_min;
  out << YAML::Key << "v_max_mps" << YAML::Value << cfg.mobility.v_max;
  out << YAML::Key << "pause_mean_s" << YAML::Value << cfg.mobility.pause_mean;
  out << YAML::Key << "c_v" << YAML::Value << cfg.mobility.c_v;
  out << YAML::EndMap;

  out << YAML::Key << "services" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : cfg.services) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << s.id;
    out << YAML::Key << "arrival_rate" << YAML::Value << s.cluster_arrival_rate;
    out << YAML::Key << "holding_time_s" << YAML::Value << s.mean_holding_time;
    out << YAML::Key << "prb_demand" << YAML::Value << s.prb_demand;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "networks" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "lte_units" << YAML::Value << cfg.networks.capacities.lte_units;
  out << YAML::Key << "wifi_units" << YAML::Value << YAML::Flow << cfg.networks.capacities.wifi_units;
  out << YAML::Key << "wifi_bitrate_bps" << YAML::Value << cfg.networks.wifi_bitrate_bps;
  out << YAML::Key << "switch_probability" << YAML::Value << cfg.networks.switch_probability;
  out << YAML::Key << "selection_sensitivity" << YAML::Value << cfg.networks.selection_sensitivity;
  out << YAML::EndMap;

  out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "subcarrier_bandwidth_hz" << YAML::Value << cfg.link.subcarrier_bandwidth_hz;
  out << YAML::Key << "frequencies" << YAML::Value << cfg.link.frequencies;
  out << YAML::Key << "symbol_rate" << YAML::Value << cfg.link.symbol_rate;
  out << YAML::Key << "modulation_efficiency" << YAML::Value << cfg.link.modulation_efficiency;
  out << YAML::Key << "bler" << YAML::Value << cfg.link.bler;
  out << YAML::EndMap;

  out << YAML::Key << "sensitivity" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "lambda" << YAML::Value << YAML::Flow << cfg.sensitivity.lambda;
  out << YAML::Key << "theta" << YAML::Value << YAML::Flow << cfg.sensitivity.theta;
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "variable" << YAML::Value << to_string(cfg.sweep.variable);
  out << YAML::Key << "start" << YAML::Value << cfg.sweep.start;
  out << YAML::Key << "stop" << YAML::Value << cfg.sweep.stop;
  out << YAML::Key << "steps" << YAML::Value << cfg.sweep.steps;
  out << YAML::Key << "mode" << YAML::Value << to_string(cfg.sweep.mode);
  out << YAML::Key << "zone" << YAML::Value << cfg.sweep.zone;
  out << YAML::Key << "fixed_occupancy" << YAML::Value << cfg.sweep.fixed_occupancy;
  out << YAML::EndMap;

  out << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "users" << YAML::Value << cfg.simulation.users;
  out << YAML::Key << "horizon_s" << YAML::Value << cfg.simulation.horizon_s;
  out << YAML::Key << "warmup_fraction" << YAML::Value << cfg.simulation.warmup_fraction;
  out << YAML::Key << "seed" << YAML::Value << cfg.simulation.seed;
  out << YAML::Key << "replications" << YAML::Value << cfg.simulation.replications;
  out << YAML::Key << "mobility" << YAML::Value << cfg.simulation.mobility;
  out << YAML::EndMap;

  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rate_law" << YAML::Value << to_string(cfg.model.rate_law);
  out << YAML::Key << "state_cap" << YAML::Value << cfg.model.state_cap;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace hetnet
