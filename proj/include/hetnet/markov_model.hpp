#pragma once

#include <Eigen/SparseCore>
#include <iosfwd>
#include <string>
#include <vector>

#include "hetnet/demand.hpp"
#include "hetnet/mobility_rwp.hpp"
#include "hetnet/selection.hpp"
#include "hetnet/state_space.hpp"

namespace hetnet {

// Which rate expressions populate the stage transitions.
//  - printed: occupancy-factor rates
//    (connect rates grow with (b/N + 1), handovers carry tau^H / tau^V).
//  - kinetic: the same stages and guards with per-session rates: Poisson
//    arrivals, exponential holding, per-session zone exit rates from the RWP
//    profile and per-session reselection. This is the process the
//    discrete-event simulator realizes.
enum class RateLaw { printed, kinetic };

const char* to_string(RateLaw law);
RateLaw parse_rate_law(const std::string& name);

enum class Stage {
  connect_c0 = 1,      // stage 1, LTE in C_0
  connect_lte_ci = 2,  // stage 2, LTE in C_i
  connect_wifi_ci = 3, // stage 3, Wi-Fi in C_i
  horizontal = 4,      // stage 4, LTE C_0 <-> C_i
  vertical = 5,        // stage 5, LTE in C_0 <-> Wi-Fi in C_i
  network_switch = 6,  // stage 6, LTE <-> Wi-Fi inside C_i
};

struct StageTransition {
  OccupancyState target;
  double rate = 0.0;
  Stage stage = Stage::connect_c0;
  // +1 for the connect / towards-C_0 / towards-LTE direction of the stage,
  // -1 for its reverse, 0 for a connection loss (session dropped during a
  // vertical handover).
  int direction = 1;
  int service = 0;
  int subcell = 0;  // 0 for stage 1
};

// Everything the stage rates depend on besides the state itself.
struct ChainContext {
  std::vector<ServiceProfile> services;
  MobilityProfile mobility;
  DemandRates demand;
  SelectionPolicy policy;
  double switch_probability = 0.5;  // P(N_1 -> N_i), also used for N_i -> N_1
  RateLaw law = RateLaw::printed;
};

ChainContext make_context(const ClusterGeometry& geom, const RwpParams& rwp,
                          std::vector<ServiceProfile> services, SelectionPolicy policy,
                          double switch_probability, RateLaw law);

std::vector<StageTransition> stage_rates(const StateSpace& space, const OccupancyState& state,
                                         const ChainContext& ctx);

class TransitionModel {
 public:
  using Generator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  TransitionModel(StateSpace space, Generator q);

  const StateSpace& space() const { return space_; }
  const Generator& generator() const { return q_; }
  std::size_t size() const { return space_.size(); }

  // Sparse text dump: one "source target rate" line per off-diagonal entry
  // preceded by a header and the state list.
  void dump(std::ostream& out) const;

 private:
  StateSpace space_;
  Generator q_;
};

// Strongly connected components of the off-diagonal transition graph.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const TransitionModel::Generator& q);

// Assembles Q (q_uv = sum of stage rates u -> v, diagonal = -row sum) and
// throws ReducibleChain when the state graph is not strongly connected.
TransitionModel build_generator(StateSpace space, const ChainContext& ctx);

// Generator from explicit off-diagonal entries; same irreducibility check.
TransitionModel build_generator(StateSpace space,
                                const std::vector<Eigen::Triplet<double>>& off_diagonal);

struct StationaryDistribution {
  std::vector<double> pi;
  double residual = 0.0;  // ||pi Q||_inf
  std::string method;
};

inline constexpr double kStationaryResidual = 1e-10;

// Solves pi Q = 0, sum pi = 1. Small chains use GTH elimination, larger ones
// a sparse LU with iterative refinement. Throws SolverFailure when the
// residual target is missed.
StationaryDistribution stationary(const TransitionModel& model);

StationaryDistribution stationary_gth(const TransitionModel& model);
StationaryDistribution stationary_sparse_lu(const TransitionModel& model);

double residual_inf(const TransitionModel& model, const std::vector<double>& pi);

}  // namespace hetnet
