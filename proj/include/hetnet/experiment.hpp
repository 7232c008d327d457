#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/markov_model.hpp"
#include "hetnet/simulator.hpp"

namespace hetnet {

// Everything derived from a config that the sweeps share: the chain, its
// stationary law and, when requested, the simulated state frequencies.
struct ChainAnalysis {
  ChainContext context;
  TransitionModel model;
  StationaryDistribution stationary;
  std::optional<SimReport> simulation;
  std::vector<double> empirical;  // simulated frequencies over model.space(), empty if not run
};

ChainAnalysis analyze_chain(const ExperimentConfig& config, bool simulate);

SimConfig simulation_config(const ExperimentConfig& config, const MobilityProfile& mobility);

// Weights of the zone averages: fresh demand plus the sub-cell-to-LTE
// transfer term of each service, normalized by their total.
ZoneWeights zone_weights(const ChainContext& ctx, ZoneId zone);

// Offered load (erlangs) of the zone's fresh demand, summed over services.
double zone_offered_load(const ChainContext& ctx, ZoneId zone);

// Distribution restricted to the states whose occupancy ratio seen from
// `zone` is closest to `fraction`, renormalized. All zeros if that set holds
// no mass.
std::vector<double> condition_on_occupancy(const std::vector<double>& distribution,
                                           const StateSpace& space, ZoneId zone, double fraction);

struct ResultRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  double lambda_factor = 0.0;
  double theta_factor = 0.0;
  double mean_bitrate_bps = 0.0;
  double mean_block_prob = 0.0;
  // NaN when the corresponding side was not evaluated.
  double sim_bitrate_bps = 0.0;
  double sim_block_prob = 0.0;
  double sim_tv_distance = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  // Run description carried into the JSON output (CSV has rows only).
  std::vector<std::pair<std::string, std::string>> metadata;
};

// Rate law, handover direction and mode of a run.
std::vector<std::pair<std::string, std::string>> run_metadata(const ExperimentConfig& config,
                                                              bool simulated);

// Sweep rows ordered by sweep value, then lambda factor, then theta factor.
// A lambda_factor sweep replaces the configured lambda list with the sweep.
ResultTable run_experiment(const ExperimentConfig& config);
ResultTable run_experiment(const ExperimentConfig& config, const ChainAnalysis& analysis);

// Single evaluation at the configured operating point (configured BLER, full
// stationary law), one row per lambda/theta pair.
ResultTable evaluate_point(const ExperimentConfig& config, const ChainAnalysis& analysis);

enum class OutputFormat { csv, json };
OutputFormat parse_format(const std::string& name);

std::string format_table(const ResultTable& table, OutputFormat format);
// Writes through a temporary file and renames it into place. Throws
// IoFailure for an empty table or an unwritable path.
void emit(const ResultTable& table, OutputFormat format, const std::string& path);

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace hetnet
