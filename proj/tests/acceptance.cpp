// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "hetnet/experiment.hpp"
#include "hetnet/markov_model.hpp"
#include "hetnet/metrics.hpp"
#include "hetnet/mobility_rwp.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

// Pinned tolerances and budgets.
constexpr double kOccupancyCeiling = 0.40;
constexpr double kLoadCeiling = 0.50;
constexpr double kBitrateRelTol = 1e-9;
constexpr double kRateFactor = 637.8912;
constexpr double kRowSumTol = 1e-12;
constexpr double kResidualTol = 1e-10;
constexpr double kTvTol = 0.05;
constexpr std::uint64_t kMinEvents = 1'000'000;
constexpr double kErlangTol = 1e-12;
constexpr int kErlangMaxServers = 20;
constexpr std::uint64_t kDensityLegs = 1'000'000;
constexpr int kDensityBins = 20;
constexpr double kDensityBinTol = 0.02;
constexpr double kDiskMassTol = 1e-6;
constexpr std::uint64_t kMobilityLegs = 4'000'000;
constexpr double kMobilityRelTol = 0.05;

const std::string kConfigs = HETNET_SOURCE_DIR "/configs/";

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Runs one criterion; an exception is a failure with its message.
void criterion(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(id, name, pass, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

double rel(double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a / b - 1.0); }

}  // namespace

int main() {
  criterion(1, "blocking ceiling over the occupancy sweep", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = load_config(kConfigs + "reference.yaml");
    const auto table = run_experiment(cfg);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    bool all_theta = true;
    for (double theta : {1.0, 0.8, 0.5}) {
      bool seen = false;
      for (const auto& r : table.rows) {
        if (r.theta_factor != theta) continue;
        seen = true;
        worst = std::max(worst, r.mean_block_prob);
      }
      all_theta = all_theta && seen;
    }
    const bool pass = all_theta && worst <= kOccupancyCeiling && elapsed < 10.0 && !table.rows.empty();
    return std::pair{pass, fmt("max %.6g <= %.2f over %zu rows, %.2f s < 10 s", worst,
                               kOccupancyCeiling, table.rows.size(), elapsed)};
  });

  criterion(2, "blocking ceiling over the offered-load sweep", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = load_config(kConfigs + "reference_offered_load.yaml");
    const auto table = run_experiment(cfg);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    for (const auto& r : table.rows) worst = std::max(worst, r.mean_block_prob);
    const bool pass = worst < kLoadCeiling && elapsed < 10.0 && !table.rows.empty();
    return std::pair{pass, fmt("max %.6g < %.2f over %zu rows (load %.3g..%.3g erl), %.2f s < 10 s", worst,
                               kLoadCeiling, table.rows.size(), cfg.sweep.start, cfg.sweep.stop, elapsed)};
  });

  criterion(3, "bit-rate structure over the BLER sweep", [] {
    const auto cfg = load_config(kConfigs + "reference_bler.yaml");
    LinkProfile clean = cfg.link;
    clean.bler = 0.0;
    const double intercept = instantaneous_bitrate(clean);
    const double expected = cfg.link.subcarrier_bandwidth_hz * kRateFactor;
    bool ok = rel(intercept, expected) <= kBitrateRelTol;
    const auto table = run_experiment(cfg);
    double worst_affine = 0.0;
    double at_one = 0.0;
    bool ordered = true;
    const std::size_t pairs = cfg.sensitivity.lambda.size() * cfg.sensitivity.theta.size();
    // Series are grouped per sweep point; the first point is BLER = 0.
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
      const auto& r = table.rows[j];
      const auto& base = table.rows[j % pairs];
      const double predicted = base.mean_bitrate_bps * (1.0 - r.sweep_value);
      worst_affine = std::max(worst_affine, std::abs(r.mean_bitrate_bps - predicted) / base.mean_bitrate_bps);
      if (r.sweep_value == 1.0) at_one = std::max(at_one, std::abs(r.mean_bitrate_bps));
      // Lambda = 0.99 against Lambda = 1 at the same point and theta.
      if (r.lambda_factor == 0.99) {
        for (std::size_t k = j - j % pairs; k < j - j % pairs + pairs; ++k) {
          const auto& o = table.rows[k];
          if (o.lambda_factor == 1.0 && o.theta_factor == r.theta_factor) {
            ordered = ordered && r.mean_bitrate_bps >= o.mean_bitrate_bps;
          }
        }
      }
    }
    ok = ok && worst_affine <= kBitrateRelTol && at_one == 0.0 && ordered && table.rows[0].mean_bitrate_bps > 0.0;
    return std::pair{ok, fmt("intercept %.10g = %.1f x %.4f, affine dev %.2g <= %.0e, D(BLER=1) = %g, "
                             "D(0.99) >= D(1): %s",
                             intercept, cfg.link.subcarrier_bandwidth_hz, kRateFactor, worst_affine,
                             kBitrateRelTol, at_one, ordered ? "yes" : "no")};
  });

  criterion(4, "generator sanity on the twelve-state instance", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = load_config(kConfigs + "twelve_state.yaml");
    const auto count = oracle::brute_force({2, 2, 1}, [](const std::vector<int>& v) {
                         return v[0] + v[1] <= 2;
                       }).size();
    bool ok = count == 12;
    std::string detail;
    for (RateLaw law : {RateLaw::kinetic, RateLaw::printed}) {
      ExperimentConfig c = cfg;
      c.model.rate_law = law;
      const auto a = analyze_chain(c, false);
      const auto& q = a.model.generator();
      double worst_row = 0.0;
      bool nonneg = true;
      for (int row = 0; row < q.outerSize(); ++row) {
        double sum = 0.0;
        for (TransitionModel::Generator::InnerIterator it(q, row); it; ++it) {
          sum += it.value();
          if (it.col() != row && it.value() < 0.0) nonneg = false;
        }
        worst_row = std::max(worst_row, std::abs(sum));
      }
      const auto sccs = strongly_connected_components(q).size();
      const double residual = residual_inf(a.model, a.stationary.pi);
      ok = ok && a.model.size() == count && worst_row <= kRowSumTol && nonneg && sccs == 1 &&
           residual <= kResidualTol;
      detail += fmt("%s: %zu states, |row sum| %.1e, SCCs %zu, |piQ| %.1e; ", to_string(law),
                    a.model.size(), worst_row, sccs, residual);
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 1.0;
    return std::pair{ok, detail + fmt("brute force %zu, %.3f s < 1 s", count, elapsed)};
  });

  criterion(5, "simulation matches the stationary law on the twelve-state instance", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = load_config(kConfigs + "twelve_state.yaml");
    const auto a = analyze_chain(cfg, true);
    const double tv = total_variation(a.stationary.pi, a.empirical);
    const double elapsed = seconds_since(t0);
    const auto events = a.simulation->events;
    const bool pass = events >= kMinEvents && tv <= kTvTol && elapsed < 60.0;
    return std::pair{pass, fmt("TV %.4f <= %.2f at %llu events (>= %llu), %.1f s < 60 s", tv, kTvTol,
                               static_cast<unsigned long long>(events),
                               static_cast<unsigned long long>(kMinEvents), elapsed)};
  });

  criterion(6, "Erlang-B closed forms and recurrence", [] {
    double worst = std::max(std::abs(erlang_block(1.0, 1) - 0.5), std::abs(erlang_block(2.0, 2) - 0.4));
    for (int s = 1; s <= kErlangMaxServers; ++s) {
      for (double rho : {0.01, 0.3, 1.0, 2.0, 5.5, 12.0, 30.0}) {
        worst = std::max(worst, std::abs(erlang_block(rho, s) - oracle::erlang_b_factorial(rho, s)));
      }
    }
    return std::pair{worst <= kErlangTol, fmt("max deviation %.2g <= %.0e (s <= %d)", worst, kErlangTol,
                                              kErlangMaxServers)};
  });

  criterion(7, "RWP density against a trajectory histogram", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto hist = oracle::rwp_radial_histogram(kDensityLegs, kDensityBins, 2024);
    double worst = 0.0;
    const int sub = 400;
    double disk = 0.0;
    for (int j = 0; j < kDensityBins; ++j) {
      // Mass of the analytic density in the annulus, midpoint rule.
      const double r0 = double(j) / kDensityBins, r1 = double(j + 1) / kDensityBins;
      double mass = 0.0;
      for (int q = 0; q < sub; ++q) {
        const double x = r0 + (q + 0.5) * (r1 - r0) / sub;
        mass += 2 * std::numbers::pi * x * rwp_density(x) * (r1 - r0) / sub;
      }
      disk += mass;
      const double mean = mass / (std::numbers::pi * (r1 * r1 - r0 * r0));
      worst = std::max(worst, std::abs(hist[static_cast<std::size_t>(j)] - mean));
    }
    const double elapsed = seconds_since(t0);
    const bool pass = worst <= kDensityBinTol && std::abs(disk - 1.0) <= kDiskMassTol && elapsed < 120.0;
    return std::pair{pass, fmt("max bin error %.4f <= %.2f over %d bins at %llu legs, disk mass - 1 = %.1e, "
                               "%.1f s < 120 s",
                               worst, kDensityBinTol, kDensityBins,
                               static_cast<unsigned long long>(kDensityLegs), disk - 1.0, elapsed)};
  });

  criterion(8, "sub-cell entry rate and residence time against trajectories", [] {
    const auto cfg = load_config(kConfigs + "reference.yaml");
    const auto& cell = cfg.geometry.subcells().at(0);
    const auto trace = oracle::trace_subcell(cfg.geometry.service_radius(), cell.radius, cell.center_distance,
                                             cfg.mobility.v_min, cfg.mobility.v_max, kMobilityLegs, 4242);
    const auto& dens = default_density();
    const double rate = arrival_rate(cfg.geometry, 2, dens, cfg.mobility);
    const double stay = mean_residence_time(cfg.geometry, 2, dens, cfg.mobility);
    const double e_rate = rel(rate, trace.entry_rate);
    const double e_stay = rel(stay, trace.mean_sojourn);
    const bool pass = e_rate <= kMobilityRelTol && e_stay <= kMobilityRelTol && cfg.mobility.c_v == kDefaultCv;
    return std::pair{pass, fmt("rate %.5g vs %.5g /s (%.2f%%), residence %.4g vs %.4g s (%.2f%%), "
                               "tolerance %.0f%%, C_v %.4g",
                               rate, trace.entry_rate, 100 * e_rate, stay, trace.mean_sojourn, 100 * e_stay,
                               100 * kMobilityRelTol, cfg.mobility.c_v)};
  });

  criterion(9, "identical seeds give byte-identical simulation output", [] {
    auto cfg = load_config(kConfigs + "twelve_state.yaml");
    cfg.simulation.horizon_s = 200000.0;
    cfg.simulation.replications = 2;
    const auto dir = std::filesystem::temp_directory_path() / "hetnet_acceptance";
    std::filesystem::create_directories(dir);
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / ("run" + std::to_string(run) + ".csv");
      emit(evaluate_point(cfg, analyze_chain(cfg, true)), OutputFormat::csv, path.string());
      std::ifstream in(path, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      outputs[run] = s.str();
    }
    std::filesystem::remove_all(dir);
    const bool pass = outputs[0] == outputs[1] && !outputs[0].empty();
    return std::pair{pass, fmt("%zu and %zu bytes, %s", outputs[0].size(), outputs[1].size(),
                               pass ? "identical" : "different")};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
