#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hetnet/demand.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/markov_model.hpp"
#include "hetnet/metrics.hpp"
#include "hetnet/mobility_rwp.hpp"
#include "hetnet/state_space.hpp"

namespace hetnet {

enum class SweepVariable { bler, occupancy, offered_load, lambda_factor };
enum class RunMode { analytic, simulate, both };

const char* to_string(SweepVariable v);
const char* to_string(RunMode m);

struct NetworkSettings {
  Capacities capacities;
  double wifi_bitrate_bps = 3.0e8;
  double switch_probability = 0.5;
  double selection_sensitivity = 1.0;  // Lambda inside the selection rule
  friend bool operator==(const NetworkSettings&, const NetworkSettings&) = default;
};

struct SensitivitySettings {
  std::vector<double> lambda{1.0};
  std::vector<double> theta{1.0};
  friend bool operator==(const SensitivitySettings&, const SensitivitySettings&) = default;
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::occupancy;
  double start = 0.0;
  double stop = 1.0;
  int steps = 11;
  RunMode mode = RunMode::analytic;
  int zone = 2;                  // zone whose metrics are reported (0 or a sub-cell)
  double fixed_occupancy = 0.5;  // conditioning level of the BLER sweep
  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;

  std::vector<double> points() const;
};

struct SimulationSettings {
  int users = 200;
  double horizon_s = 1.0e5;
  double warmup_fraction = 0.1;
  std::uint64_t seed = 1;
  int replications = 1;
  bool mobility = true;
  friend bool operator==(const SimulationSettings&, const SimulationSettings&) = default;
};

struct ModelSettings {
  RateLaw rate_law = RateLaw::printed;
  std::size_t state_cap = kDefaultStateCap;
  friend bool operator==(const ModelSettings&, const ModelSettings&) = default;
};

struct ExperimentConfig {
  ClusterGeometry geometry;
  RwpParams mobility;
  std::vector<ServiceProfile> services;
  NetworkSettings networks;
  LinkProfile link;
  SensitivitySettings sensitivity;
  SweepSpec sweep;
  SimulationSettings simulation;
  ModelSettings model;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

  // Field-qualified messages, empty when the config is usable.
  std::vector<std::string> validate() const;
  // Throws ConfigInvalid listing every problem.
  void require_valid() const;
};

// YAML text with sections geometry, mobility, services, networks, link,
// sensitivity, sweep, simulation and model. Omitted keys keep their defaults;
// unknown keys and malformed values raise ConfigInvalid.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace hetnet
