#include "hetnet/markov_model.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

const char* to_string(RateLaw law) { return law == RateLaw::printed ? "printed" : "kinetic"; }

RateLaw parse_rate_law(const std::string& name) {
  if (name == "printed") return RateLaw::printed;
  if (name == "kinetic") return RateLaw::kinetic;
  throw ConfigInvalid("unknown rate law '" + name + "' (expected printed or kinetic)");
}

ChainContext make_context(const ClusterGeometry& geom, const RwpParams& rwp,
                          std::vector<ServiceProfile> services, SelectionPolicy policy,
                          double switch_probability, RateLaw law) {
  ChainContext ctx;
  ctx.mobility = analyze_mobility(geom, rwp);
  ctx.demand = derive_demand(ctx.mobility, services);
  ctx.services = std::move(services);
  ctx.policy = policy;
  ctx.switch_probability = switch_probability;
  ctx.law = law;
  return ctx;
}

namespace {

double inverse(double t) { return std::isfinite(t) && t > 0.0 ? 1.0 / t : 0.0; }

class StageEmitter {
 public:
  StageEmitter(const StateSpace& space, const OccupancyState& state, const ChainContext& ctx)
      : space_(space), layout_(space.layout()), caps_(space.capacities()), state_(state),
        ctx_(ctx) {}

  std::vector<StageTransition> run() {
    for (int k = 0; k < layout_.services(); ++k) {
      service_ = k;
      n_ = space_.prb_demand()[static_cast<std::size_t>(k)];
      lte_total_ = layout_.total_lte(state_);
      stage1();
      for (int i = 2; i <= layout_.m(); ++i) {
        subcell_ = i;
        subcell_stages();
      }
      subcell_ = 0;
    }
    return std::move(out_);
  }

 private:
  bool printed() const { return ctx_.law == RateLaw::printed; }
  const ServiceDemand& demand() const {
    return ctx_.demand.services[static_cast<std::size_t>(service_)];
  }
  double holding() const {
    return ctx_.services[static_cast<std::size_t>(service_)].mean_holding_time;
  }
  std::size_t lte(ZoneId z) const { return layout_.lte_slot(service_, z); }
  std::size_t wifi(int i) const { return layout_.wifi_slot(service_, i); }
  double sessions(std::size_t slot) const {
    return layout_.is_lte_slot(slot) ? static_cast<double>(state_.units[slot]) / n_
                                     : static_cast<double>(state_.units[slot]);
  }
  bool lte_room(int released = 0) const { return lte_total_ - released + n_ <= caps_.lte_units; }

  Decision choose(int i, int lte_released, int wifi_released) const {
    CapacitySnapshot snap{lte_total_ - lte_released, caps_.lte_units,
                          layout_.wifi_in(state_, i) - wifi_released, caps_.wifi(i)};
    return select_network(ZoneId::subcell(i), snap, n_, ctx_.policy);
  }

  void emit(std::initializer_list<std::pair<std::size_t, int>> deltas, double rate, Stage stage,
            int direction) {
    if (!(rate > 0.0)) return;
    OccupancyState target = state_;
    for (auto [slot, delta] : deltas) target.units[slot] += delta;
    out_.push_back({std::move(target), rate, stage, direction, service_, subcell_});
  }

  void stage1() {
    const ZoneId c0 = ZoneId::lte_only();
    const double b11 = sessions(lte(c0));
    const ServiceDemand& d = demand();
    double up = 0.0;
    double down = 0.0;
    if (printed()) {
      const double mobility_rate = inverse(ctx_.mobility.residence_time[0]) + d.exit_c0_cluster;
      const double demand_rate = d.fresh[0] + d.horizontal;
      up = demand_rate * (b11 + 1.0) * mobility_rate;
      down = demand_rate * b11 * mobility_rate;
    } else {
      up = d.fresh[0];
      down = b11 / holding();
    }
    if (lte_room()) emit({{lte(c0), n_}}, up, Stage::connect_c0, 1);
    if (b11 >= 1.0) emit({{lte(c0), -n_}}, down, Stage::connect_c0, -1);
  }

  void subcell_stages() {
    const int i = subcell_;
    const ZoneId ci = ZoneId::subcell(i);
    const ZoneId c0 = ZoneId::lte_only();
    const ServiceDemand& d = demand();
    const double b11 = sessions(lte(c0));
    const double b1i = sessions(lte(ci));
    const double bi = sessions(wifi(i));
    const bool wifi_room = layout_.wifi_in(state_, i) + 1 <= caps_.wifi(i);
    const double inv_delta = inverse(ctx_.mobility.residence_time[static_cast<std::size_t>(i)]);
    const double cell_demand = d.fresh[static_cast<std::size_t>(i)];
    const double boosted = cell_demand * (1.0 + ctx_.switch_probability);
    const double tau_h = d.horizontal;
    const double tau_v = d.vertical[static_cast<std::size_t>(i)];
    const double out_rate = ctx_.mobility.rate_out_of(i);
    const double in_rate = ctx_.mobility.rate_into(i);
    const double reselect = ctx_.switch_probability * inv_delta;

    // Stages 2 and 3: fresh connections go where the selection rule sends
    // them; disconnects always proceed.
    switch (choose(i, 0, 0)) {
      case Decision::connect_lte:
        emit({{lte(ci), n_}}, printed() ? boosted * (b1i + 1.0) * inv_delta : cell_demand,
             Stage::connect_lte_ci, 1);
        break;
      case Decision::connect_wifi:
        emit({{wifi(i), 1}}, printed() ? boosted * (bi + 1.0) * inv_delta : cell_demand,
             Stage::connect_wifi_ci, 1);
        break;
      case Decision::blocked:
        break;
    }
    if (b1i >= 1.0) {
      emit({{lte(ci), -n_}}, printed() ? boosted * b1i * inv_delta : b1i / holding(),
           Stage::connect_lte_ci, -1);
    }
    if (bi >= 1.0) {
      emit({{wifi(i), -1}}, printed() ? boosted * bi * inv_delta : bi / holding(),
           Stage::connect_wifi_ci, -1);
    }

    // Stage 4: LTE sessions moving between C_i and C_0. Leaving C_i keeps the
    // LTE total unchanged; entering C_i re-runs the selection with the
    // session's own units released.
    if (b1i >= 1.0) {
      emit({{lte(ci), -n_}, {lte(c0), n_}},
           printed() ? (b11 + 1.0) * b1i * tau_h : b1i * out_rate, Stage::horizontal, 1);
    }
    const Decision entering = b11 >= 1.0 ? choose(i, n_, 0) : Decision::blocked;
    if (entering == Decision::connect_lte) {
      emit({{lte(c0), -n_}, {lte(ci), n_}},
           printed() ? b11 * (b1i + 1.0) * tau_h : b11 * in_rate, Stage::horizontal, -1);
    }

    // Stage 5: Wi-Fi sessions leaving C_i need LTE room in C_0, otherwise the
    // connection is lost (kinetic law only); LTE sessions entering C_i may
    // move to Wi-Fi.
    if (bi >= 1.0) {
      if (lte_room()) {
        emit({{wifi(i), -1}, {lte(c0), n_}},
             printed() ? bi * (b11 + 1.0) * tau_v : bi * out_rate, Stage::vertical, 1);
      } else if (!printed()) {
        emit({{wifi(i), -1}}, bi * out_rate, Stage::vertical, 0);
      }
    }
    if (entering == Decision::connect_wifi && wifi_room) {
      emit({{lte(c0), -n_}, {wifi(i), 1}},
           printed() ? (bi + 1.0) * b11 * tau_v : b11 * in_rate, Stage::vertical, -1);
    }

    // Stage 6: switching network without leaving C_i.
    if (printed()) {
      if (bi >= 1.0 && lte_room()) {
        emit({{wifi(i), -1}, {lte(ci), n_}}, (b1i + 1.0) * bi * inv_delta,
             Stage::network_switch, 1);
      }
      if (b1i >= 1.0 && wifi_room) {
        emit({{lte(ci), -n_}, {wifi(i), 1}}, b1i * (bi + 1.0) * inv_delta,
             Stage::network_switch, -1);
      }
    } else {
      if (bi >= 1.0 && choose(i, 0, 1) == Decision::connect_lte && lte_room()) {
        emit({{wifi(i), -1}, {lte(ci), n_}}, bi * reselect, Stage::network_switch, 1);
      }
      if (b1i >= 1.0 && choose(i, n_, 0) == Decision::connect_wifi && wifi_room) {
        emit({{lte(ci), -n_}, {wifi(i), 1}}, b1i * reselect, Stage::network_switch, -1);
      }
    }
  }

  const StateSpace& space_;
  const StateLayout& layout_;
  const Capacities& caps_;
  const OccupancyState& state_;
  const ChainContext& ctx_;
  std::vector<StageTransition> out_;
  int service_ = 0;
  int subcell_ = 0;
  int n_ = 1;
  int lte_total_ = 0;
};

}  // namespace

std::vector<StageTransition> stage_rates(const StateSpace& space, const OccupancyState& state,
                                         const ChainContext& ctx) {
  if (ctx.services.size() != space.prb_demand().size() ||
      ctx.demand.services.size() != space.prb_demand().size()) {
    throw std::invalid_argument("chain context does not match the state space services");
  }
  return StageEmitter(space, state, ctx).run();
}

TransitionModel::TransitionModel(StateSpace space, Generator q)
    : space_(std::move(space)), q_(std::move(q)) {}

void TransitionModel::dump(std::ostream& out) const {
  out << "# states " << space_.size() << "\n";
  for (std::size_t i = 0; i < space_.size(); ++i) {
    out << "# " << i << ' ' << space_.layout().describe(space_[i]) << "\n";
  }
  out << "# source target rate\n";
  out.precision(17);
  for (int row = 0; row < q_.outerSize(); ++row) {
    for (Generator::InnerIterator it(q_, row); it; ++it) {
      if (it.col() != row) out << row << ' ' << it.col() << ' ' << it.value() << "\n";
    }
  }
}

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const TransitionModel::Generator& q) {
  const auto n = static_cast<std::size_t>(q.rows());
  std::vector<std::vector<std::size_t>> fwd(n);
  std::vector<std::vector<std::size_t>> bwd(n);
  for (int row = 0; row < q.outerSize(); ++row) {
    for (TransitionModel::Generator::InnerIterator it(q, row); it; ++it) {
      if (it.col() != row && it.value() > 0.0) {
        fwd[static_cast<std::size_t>(row)].push_back(static_cast<std::size_t>(it.col()));
        bwd[static_cast<std::size_t>(it.col())].push_back(static_cast<std::size_t>(row));
      }
    }
  }
  // Kosaraju, iterative: finishing order on the forward graph, then sweep the
  // reverse graph in decreasing finishing time.
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < fwd[v].size()) {
        const std::size_t w = fwd[v][next++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<std::vector<std::size_t>> components;
  std::vector<char> assigned(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (assigned[*it]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{*it};
    assigned[*it] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t w : bwd[v]) {
        if (!assigned[w]) {
          assigned[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

TransitionModel build_generator(StateSpace space,
                                const std::vector<Eigen::Triplet<double>>& off_diagonal) {
  if (space.size() == 0) throw std::invalid_argument("empty state space");
  const auto n = static_cast<Eigen::Index>(space.size());
  std::vector<double> row_sum(space.size(), 0.0);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(off_diagonal.size() + space.size());
  for (const auto& t : off_diagonal) {
    if (t.row() == t.col()) continue;
    if (!(t.value() >= 0.0) || !std::isfinite(t.value())) {
      throw SolverFailure("transition rate must be finite and non-negative");
    }
    entries.push_back(t);
    row_sum[static_cast<std::size_t>(t.row())] += t.value();
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    entries.emplace_back(i, i, -row_sum[static_cast<std::size_t>(i)]);
  }
  TransitionModel::Generator q(n, n);
  q.setFromTriplets(entries.begin(), entries.end());
  q.makeCompressed();

  auto components = strongly_connected_components(q);
  if (components.size() > 1) {
    std::ostringstream msg;
    msg << "chain is reducible: " << components.size() << " strongly connected components";
    std::size_t shown = 0;
    for (const auto& comp : components) {
      if (shown++ == 5) {
        msg << "; ...";
        break;
      }
      msg << "; {size " << comp.size() << ", first " << space.layout().describe(space[comp.front()])
          << "}";
    }
    throw ReducibleChain(msg.str());
  }
  return TransitionModel(std::move(space), std::move(q));
}

TransitionModel build_generator(StateSpace space, const ChainContext& ctx) {
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t u = 0; u < space.size(); ++u) {
    for (const StageTransition& t : stage_rates(space, space[u], ctx)) {
      const auto v = space.index_of(t.target);
      if (!v) {
        throw SolverFailure("stage transition leaves the state space from " +
                            space.layout().describe(space[u]));
      }
      entries.emplace_back(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(*v), t.rate);
    }
  }
  return build_generator(std::move(space), entries);
}

double residual_inf(const TransitionModel& model, const std::vector<double>& pi) {
  const auto& q = model.generator();
  std::vector<double> r(pi.size(), 0.0);
  for (int row = 0; row < q.outerSize(); ++row) {
    for (TransitionModel::Generator::InnerIterator it(q, row); it; ++it) {
      r[static_cast<std::size_t>(it.col())] += pi[static_cast<std::size_t>(row)] * it.value();
    }
  }
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  return worst;
}

namespace {

void finish(StationaryDistribution& d, const TransitionModel& model) {
  double total = 0.0;
  for (double& p : d.pi) {
    if (p < 0.0) {
      // Round-off only; a materially negative entry means the solve failed.
      if (p < -1e-12) {
        throw SolverFailure("stationary solve produced a negative probability " +
                            std::to_string(p));
      }
      p = 0.0;
    }
    total += p;
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw SolverFailure("stationary solve degenerated");
  for (double& p : d.pi) p /= total;
  d.residual = residual_inf(model, d.pi);
  if (!(d.residual <= kStationaryResidual)) {
    std::ostringstream msg;
    msg << d.method << " residual ||pi Q||_inf = " << d.residual << " exceeds "
        << kStationaryResidual;
    throw SolverFailure(msg.str());
  }
}

}  // namespace

StationaryDistribution stationary_gth(const TransitionModel& model) {
  const auto n = static_cast<Eigen::Index>(model.size());
  Eigen::MatrixXd a = Eigen::MatrixXd(model.generator());
  // Grassmann-Taksar-Heyman: censor states from the last one down using
  // only off-diagonal (non-negative) quantities, so no cancellation occurs.
  for (Eigen::Index k = n - 1; k > 0; --k) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) s += a(k, j);
    if (!(s > 0.0)) throw SolverFailure("GTH elimination hit a state with no way back");
    for (Eigen::Index i = 0; i < k; ++i) a(i, k) /= s;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double akj = a(k, j);
      if (akj == 0.0) continue;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (i != j) a(i, j) += a(i, k) * akj;
      }
    }
  }
  StationaryDistribution d;
  d.method = "gth";
  d.pi.assign(static_cast<std::size_t>(n), 0.0);
  d.pi[0] = 1.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < j; ++i) v += d.pi[static_cast<std::size_t>(i)] * a(i, j);
    d.pi[static_cast<std::size_t>(j)] = v;
  }
  finish(d, model);
  return d;
}

StationaryDistribution stationary_sparse_lu(const TransitionModel& model) {
  const auto n = static_cast<Eigen::Index>(model.size());
  // Q^T pi^T = 0 with the last balance equation replaced by sum(pi) = 1.
  std::vector<Eigen::Triplet<double>> entries;
  const auto& q = model.generator();
  for (int row = 0; row < q.outerSize(); ++row) {
    for (TransitionModel::Generator::InnerIterator it(q, row); it; ++it) {
      if (it.col() != n - 1) entries.emplace_back(it.col(), row, it.value());
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) entries.emplace_back(n - 1, j, 1.0);
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw SolverFailure("sparse LU factorization failed");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  Eigen::VectorXd x = lu.solve(b);
  for (int sweep = 0; sweep < 3; ++sweep) {
    const Eigen::VectorXd r = b - a * x;
    if (r.lpNorm<Eigen::Infinity>() < 1e-15) break;
    x += lu.solve(r);
  }
  StationaryDistribution d;
  d.method = "sparse_lu";
  d.pi.assign(x.data(), x.data() + n);
  finish(d, model);
  return d;
}

StationaryDistribution stationary(const TransitionModel& model) {
  if (model.size() == 1) {
    StationaryDistribution d{{1.0}, 0.0, "trivial"};
    d.residual = residual_inf(model, d.pi);
    return d;
  }
  return model.size() <= 600 ? stationary_gth(model) : stationary_sparse_lu(model);
}

}  // namespace hetnet
