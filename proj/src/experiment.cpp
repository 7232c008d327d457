#include "hetnet/experiment.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ZoneId report_zone(const ExperimentConfig& cfg) {
  return cfg.sweep.zone == 0 ? ZoneId::lte_only() : ZoneId::subcell(cfg.sweep.zone);
}

std::vector<int> prb_list(const std::vector<ServiceProfile>& services) {
  std::vector<int> out;
  for (const auto& s : services) out.push_back(s.prb_demand);
  return out;
}

struct Metrics {
  double bitrate = kNaN;
  double block = kNaN;
};

Metrics evaluate(const std::vector<double>& dist, const StateSpace& space, const ZoneWeights& w,
                 double d_avg, double lambda, double p_block, double theta) {
  double mass = 0.0;
  for (double p : dist) mass += p;
  if (!(mass > 0.0)) return {};
  return {mean_bitrate(dist, space, w, d_avg, lambda), mean_block(dist, space, w, p_block, theta)};
}

}  // namespace

SimConfig simulation_config(const ExperimentConfig& cfg, const MobilityProfile& mobility) {
  SimConfig sim;
  sim.geometry = cfg.geometry;
  sim.rwp = cfg.mobility;
  sim.mobility_enabled = cfg.simulation.mobility;
  sim.services = cfg.services;
  sim.capacities = cfg.networks.capacities;
  sim.policy = {instantaneous_bitrate(cfg.link), cfg.networks.wifi_bitrate_bps,
                cfg.networks.selection_sensitivity};
  for (int i = 2; i <= cfg.geometry.m(); ++i) {
    sim.reselection_rate.push_back(cfg.networks.switch_probability * mobility.rate_out_of(i));
  }
  sim.users = cfg.simulation.users;
  sim.horizon = cfg.simulation.horizon_s;
  sim.warmup_fraction = cfg.simulation.warmup_fraction;
  sim.seed = cfg.simulation.seed;
  return sim;
}

ChainAnalysis analyze_chain(const ExperimentConfig& cfg, bool simulate) {
  cfg.require_valid();
  const SelectionPolicy policy{instantaneous_bitrate(cfg.link), cfg.networks.wifi_bitrate_bps,
                               cfg.networks.selection_sensitivity};
  ChainContext ctx = make_context(cfg.geometry, cfg.mobility, cfg.services, policy,
                                  cfg.networks.switch_probability, cfg.model.rate_law);
  StateSpace space = enumerate_states(cfg.networks.capacities, prb_list(cfg.services),
                                      cfg.geometry.m(), cfg.model.state_cap);
  TransitionModel model = build_generator(std::move(space), ctx);
  StationaryDistribution pi = stationary(model);
  ChainAnalysis out{std::move(ctx), std::move(model), std::move(pi), std::nullopt, {}};
  if (simulate) {
    out.simulation = run_replications(simulation_config(cfg, out.context.mobility),
                                      cfg.simulation.replications);
    out.empirical = out.simulation->frequencies(out.model.space());
  }
  return out;
}

ZoneWeights zone_weights(const ChainContext& ctx, ZoneId zone) {
  ZoneWeights w;
  w.zone = zone;
  const auto z = static_cast<std::size_t>(zone.value);
  for (const auto& d : ctx.demand.services) {
    const double transfer = zone.is_lte_only() ? d.horizontal : d.vertical.at(z);
    w.weights.push_back(d.fresh.at(z) + transfer);
  }
  w.normalizer = w.total();
  return w;
}

double zone_offered_load(const ChainContext& ctx, ZoneId zone) {
  double rho = 0.0;
  for (std::size_t k = 0; k < ctx.services.size(); ++k) {
    rho += ctx.demand.services[k].fresh.at(static_cast<std::size_t>(zone.value)) *
           ctx.services[k].mean_holding_time;
  }
  return rho;
}

std::vector<double> condition_on_occupancy(const std::vector<double>& distribution,
                                           const StateSpace& space, ZoneId zone, double fraction) {
  const auto& layout = space.layout();
  std::vector<double> gap(space.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < space.size(); ++s) {
    gap[s] = std::abs(layout.occupancy_ratio(space[s], space.capacities(), zone) - fraction);
    best = std::min(best, gap[s]);
  }
  std::vector<double> out(space.size(), 0.0);
  double mass = 0.0;
  for (std::size_t s = 0; s < space.size(); ++s) {
    if (gap[s] <= best + 1e-12) {
      out[s] = distribution.at(s);
      mass += out[s];
    }
  }
  if (mass > 0.0) {
    for (double& p : out) p /= mass;
  }
  return out;
}

ResultTable run_experiment(const ExperimentConfig& config) {
  config.require_valid();
  const bool simulate = config.sweep.mode != RunMode::analytic;
  return run_experiment(config, analyze_chain(config, simulate));
}

ResultTable run_experiment(const ExperimentConfig& cfg, const ChainAnalysis& a) {
  const StateSpace& space = a.model.space();
  const ZoneId zone = report_zone(cfg);
  const ZoneWeights w = zone_weights(a.context, zone);
  const int servers = static_cast<int>(cfg.services.size());
  const double base_block = erlang_block(zone_offered_load(a.context, zone), servers);
  const double base_rate = instantaneous_bitrate(cfg.link);

  const bool analytic = cfg.sweep.mode != RunMode::simulate;
  const bool simulated = cfg.sweep.mode != RunMode::analytic && !a.empirical.empty();
  const double tv = simulated ? total_variation(a.stationary.pi, a.empirical) : kNaN;

  const SweepVariable var = cfg.sweep.variable;
  const std::vector<double> fixed_pi =
      var == SweepVariable::bler
          ? condition_on_occupancy(a.stationary.pi, space, zone, cfg.sweep.fixed_occupancy)
          : a.stationary.pi;
  std::vector<double> fixed_emp;
  if (simulated) {
    fixed_emp = var == SweepVariable::bler
                    ? condition_on_occupancy(a.empirical, space, zone, cfg.sweep.fixed_occupancy)
                    : a.empirical;
  }

  ResultTable table;
  table.metadata = run_metadata(cfg, simulated);
  for (double x : cfg.sweep.points()) {
    const std::vector<double>* pi = &fixed_pi;
    const std::vector<double>* emp = &fixed_emp;
    std::vector<double> cond_pi;
    std::vector<double> cond_emp;
    double d_avg = base_rate;
    double p_block = base_block;
    std::vector<double> lambdas = cfg.sensitivity.lambda;
    switch (var) {
      case SweepVariable::occupancy:
        cond_pi = condition_on_occupancy(a.stationary.pi, space, zone, x);
        pi = &cond_pi;
        if (simulated) {
          cond_emp = condition_on_occupancy(a.empirical, space, zone, x);
          emp = &cond_emp;
        }
        break;
      case SweepVariable::bler: {
        LinkProfile link = cfg.link;
        link.bler = x;
        d_avg = instantaneous_bitrate(link);
        break;
      }
      case SweepVariable::offered_load:
        p_block = erlang_block(x, servers);
        break;
      case SweepVariable::lambda_factor:
        lambdas = {x};
        break;
    }
    for (double lambda : lambdas) {
      for (double theta : cfg.sensitivity.theta) {
        ResultRow row;
        row.sweep_var = to_string(var);
        row.sweep_value = x;
        row.lambda_factor = lambda;
        row.theta_factor = theta;
        const Metrics m = analytic ? evaluate(*pi, space, w, d_avg, lambda, p_block, theta) : Metrics{};
        const Metrics s = simulated ? evaluate(*emp, space, w, d_avg, lambda, p_block, theta) : Metrics{};
        row.mean_bitrate_bps = m.bitrate;
        row.mean_block_prob = m.block;
        row.sim_bitrate_bps = s.bitrate;
        row.sim_block_prob = s.block;
        row.sim_tv_distance = tv;
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

ResultTable evaluate_point(const ExperimentConfig& cfg, const ChainAnalysis& a) {
  const StateSpace& space = a.model.space();
  const ZoneId zone = report_zone(cfg);
  const ZoneWeights w = zone_weights(a.context, zone);
  const double p_block =
      erlang_block(zone_offered_load(a.context, zone), static_cast<int>(cfg.services.size()));
  const double d_avg = instantaneous_bitrate(cfg.link);
  const bool simulated = !a.empirical.empty();
  const double tv = simulated ? total_variation(a.stationary.pi, a.empirical) : kNaN;

  ResultTable table;
  table.metadata = run_metadata(cfg, simulated);
  for (double lambda : cfg.sensitivity.lambda) {
    for (double theta : cfg.sensitivity.theta) {
      ResultRow row;
      row.sweep_var = "bler";
      row.sweep_value = cfg.link.bler;
      row.lambda_factor = lambda;
      row.theta_factor = theta;
      const Metrics m = evaluate(a.stationary.pi, space, w, d_avg, lambda, p_block, theta);
      const Metrics s = simulated ? evaluate(a.empirical, space, w, d_avg, lambda, p_block, theta) : Metrics{};
      row.mean_bitrate_bps = m.bitrate;
      row.mean_block_prob = m.block;
      row.sim_bitrate_bps = s.bitrate;
      row.sim_block_prob = s.block;
      row.sim_tv_distance = tv;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::vector<std::pair<std::string, std::string>> run_metadata(const ExperimentConfig& cfg, bool simulated) {
  return {{"rate_law", to_string(cfg.model.rate_law)},
          {"horizontal_handover", "into the LTE network over C_0"},
          {"sweep_variable", to_string(cfg.sweep.variable)},
          {"simulated", simulated ? "true" : "false"}};
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigInvalid("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_table(const ResultTable& table, OutputFormat format) {
  static const char* const kColumns[] = {"sweep_var",       "sweep_value",    "lambda_factor",
                                         "theta_factor",    "mean_bitrate_bps", "mean_block_prob",
                                         "sim_bitrate_bps", "sim_block_prob", "sim_tv_distance"};
  auto numbers = [](const ResultRow& r) {
    return std::array<double, 8>{r.sweep_value,     r.lambda_factor,   r.theta_factor,
                                 r.mean_bitrate_bps, r.mean_block_prob, r.sim_bitrate_bps,
                                 r.sim_block_prob,   r.sim_tv_distance};
  };
  std::ostringstream out;
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < std::size(kColumns); ++c) out << (c ? "," : "") << kColumns[c];
    out << '\n';
    for (const auto& r : table.rows) {
      out << r.sweep_var;
      for (double v : numbers(r)) out << ',' << format_double(v);
      out << '\n';
    }
    return out.str();
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    nlohmann::ordered_json row;
    row[kColumns[0]] = r.sweep_var;
    const auto values = numbers(r);
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (std::isnan(values[c])) {
        row[kColumns[c + 1]] = nullptr;
      } else {
        row[kColumns[c + 1]] = values[c];
      }
    }
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  if (!table.metadata.empty()) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit(const ResultTable& table, OutputFormat format, const std::string& path) {
  if (table.rows.empty()) throw IoFailure("refusing to write an empty result table");
  const std::string text = format_table(table, format);
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoFailure("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoFailure("cannot move result into " + path);
  }
}

}  // namespace hetnet
