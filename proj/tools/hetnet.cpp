// Command-line front end: validate a config, evaluate the chain at the
// configured point, simulate it, or run the configured sweep.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "hetnet/config.hpp"
#include "hetnet/error.hpp"
#include "hetnet/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

void dump_generator(const hetnet::ChainAnalysis& a, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw hetnet::IoFailure("cannot open " + path);
  a.model.dump(out);
  if (!out) throw hetnet::IoFailure("write to " + path + " failed");
}

void summarize(const hetnet::ChainAnalysis& a) {
  std::cerr << "states: " << a.model.size() << ", solver: " << a.stationary.method
            << ", residual: " << a.stationary.residual << '\n';
  if (a.simulation) {
    std::cerr << "simulated events: " << a.simulation->events
              << ", TV distance to stationary law: "
              << hetnet::total_variation(a.stationary.pi, a.empirical) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTE/Wi-Fi cluster performance: Markov analysis and discrete-event simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::string format = "csv";
  std::string generator_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;

  auto* validate = app.add_subcommand("validate", "Check a configuration file");
  validate->add_option("config", config_path, "YAML configuration")->required();

  auto* analyze = app.add_subcommand("analyze", "Evaluate the chain at the configured point");
  auto* simulate = app.add_subcommand("simulate", "Simulate the configured point and compare");
  auto* sweep = app.add_subcommand("sweep", "Run the configured sweep");
  for (auto* cmd : {analyze, simulate, sweep}) {
    cmd->add_option("config", config_path, "YAML configuration")->required();
    cmd->add_option("-o,--output", output, "Result file")->required();
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--dump-generator", generator_path, "Write states and generator entries");
  }
  simulate->add_option("--seed", seed, "Simulation seed");
  simulate->add_option("--reps", reps, "Independent replications")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  hetnet::ExperimentConfig cfg;
  try {
    cfg = hetnet::load_config(config_path);
  } catch (const hetnet::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (seed) cfg.simulation.seed = *seed;
    if (reps) cfg.simulation.replications = *reps;
    cfg.require_valid();

    if (validate->parsed()) {
      std::cout << "ok: " << cfg.services.size() << " service(s), " << cfg.geometry.m() - 1
                << " sub-cell(s), " << cfg.networks.capacities.lte_units << " LTE units\n";
      return 0;
    }

    const auto fmt = hetnet::parse_format(format);
    hetnet::ResultTable table;
    if (analyze->parsed() || simulate->parsed()) {
      const auto a = hetnet::analyze_chain(cfg, simulate->parsed());
      summarize(a);
      dump_generator(a, generator_path);
      table = hetnet::evaluate_point(cfg, a);
    } else {
      const auto a = hetnet::analyze_chain(cfg, cfg.sweep.mode != hetnet::RunMode::analytic);
      summarize(a);
      dump_generator(a, generator_path);
      table = hetnet::run_experiment(cfg, a);
    }
    hetnet::emit(table, fmt, output);
    return 0;
  } catch (const hetnet::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hetnet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
