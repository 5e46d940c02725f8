#include "rspgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EdgeSlotTable zero_edge_table(const ProblemInstance& inst) {
  return EdgeSlotTable(inst.num_edges(), std::vector<double>(inst.horizon, 0.0));
}

EdgeSlotTable extract_edge_table(const ProblemInstance& inst, const VariableIndex& index,
                                 const Eigen::VectorXd& x, VarKind kind, int owner) {
  EdgeSlotTable table = zero_edge_table(inst);
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto [j, l] = inst.network.edges[e];
    for (int t = 1; t <= inst.horizon; ++t)
      table[e][t - 1] = x[index.at({kind, owner, j, l, t, -1})];
  }
  return table;
}

NodeSlotTable extract_state_table(const ProblemInstance& inst, const VariableIndex& index,
                                  const Eigen::VectorXd& x, int owner, int scenario = -1) {
  NodeSlotTable table(inst.num_nodes(), std::vector<double>(inst.horizon, 0.0));
  for (int j = 0; j < inst.num_nodes(); ++j)
    for (int t = 1; t <= inst.horizon; ++t)
      table[j][t - 1] = x[scenario < 0
                              ? index.at({VarKind::state, owner, j, -1, t, -1})
                              : index.at({VarKind::scenario_state, owner, j, -1, t, scenario})];
  return table;
}

void require_valid(const ProblemInstance& inst) {
  const auto violations = validate_instance(inst);
  if (!violations.empty())
    throw std::invalid_argument("invalid instance: " + violations.front().field + ": " +
                                violations.front().message);
}

void clamp_prices(EdgeSlotTable& prices, double p_max) {
  for (auto& row : prices)
    for (double& p : row) p = std::clamp(p, 0.0, p_max);
}

}  // namespace

double default_eps_zero(const ProblemInstance& inst) {
  return 1e-6 * std::max(inst.max_base_demand(), 1e-6);
}

EdgeSlotTable linear_demand_table(const ProblemInstance& inst, const EdgeSlotTable& own,
                                  const EdgeSlotTable& rival) {
  EdgeSlotTable table = zero_edge_table(inst);
  const double pm = inst.p_max;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t)
      table[e][t - 1] = inst.demand.at(e, t) *
                        (0.5 - own[e][t - 1] / pm + rival[e][t - 1] / (2.0 * pm));
  return table;
}

EdgeSlotTable monopoly_demand_table(const ProblemInstance& inst, const EdgeSlotTable& prices) {
  EdgeSlotTable table = zero_edge_table(inst);
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t)
      table[e][t - 1] = inst.demand.at(e, t) * (1.0 - prices[e][t - 1] / inst.p_max);
  return table;
}

NodeSlotTable propagate_states(const ProblemInstance& inst, const EdgeSlotTable& demand,
                               const EdgeSlotTable& reroute, const std::vector<double>& x0) {
  NodeSlotTable state(inst.num_nodes(), std::vector<double>(inst.horizon, 0.0));
  const ArrivalSchedule arrivals(inst);
  std::vector<std::vector<int>> out_edges(inst.num_nodes());
  for (int e = 0; e < inst.num_edges(); ++e)
    out_edges[inst.network.edges[e].first].push_back(e);

  for (int t = 1; t <= inst.horizon; ++t)
    for (int j = 0; j < inst.num_nodes(); ++j) {
      double value = t > 1 ? state[j][t - 2] : x0[j];
      for (const auto& [e, tau] : arrivals.at(j, t))
        value += demand[e][tau - 1] + reroute[e][tau - 1];
      for (int e : out_edges[j]) value -= demand[e][t - 1] + reroute[e][t - 1];
      state[j][t - 1] = value;
    }
  return state;
}

double max_fleet_accounting_error(const ProblemInstance& inst, const EdgeSlotTable& demand,
                                  const EdgeSlotTable& reroute, const NodeSlotTable& state,
                                  double capacity) {
  double worst = 0.0;
  for (int t = 1; t <= inst.horizon; ++t) {
    double available = 0.0;
    for (int j = 0; j < inst.num_nodes(); ++j) available += state[j][t - 1];
    double in_transit = 0.0;
    for (int e = 0; e < inst.num_edges(); ++e)
      for (int tau = 1; tau <= t; ++tau)
        if (tau + inst.travel.at(e, tau) > t)
          in_transit += demand[e][tau - 1] + reroute[e][tau - 1];
    worst = std::max(worst, std::abs(available + in_transit - capacity));
  }
  return worst;
}

GneSolution solve_gne(const ProblemInstance& inst, const SolverSettings& settings, bool verify,
                      double verify_tol) {
  require_valid(inst);
  const AssembledGame game = assemble_potential_game(inst);
  const QpSolution qp = solve_qp(game.program, settings);

  GneSolution sol;
  sol.status = qp.status;
  sol.iterations = qp.iterations;
  sol.primal_residual = qp.primal_residual;
  sol.stationarity_residual = qp.stationarity_residual;
  sol.deviation_gain = {kNaN, kNaN};
  if (qp.status == QpStatus::infeasible) return sol;

  for (int i = 0; i < kNumProviders; ++i) {
    auto& tab = sol.provider[i];
    tab.price = extract_edge_table(inst, game.index, qp.x, VarKind::price, i);
    tab.reroute = extract_edge_table(inst, game.index, qp.x, VarKind::reroute, i);
    tab.state = extract_state_table(inst, game.index, qp.x, i);
  }
  // Zero-base-demand entries are objective- and constraint-free: report them
  // at the cap, the "absent from this market" convention.
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t)
      if (inst.demand.at(e, t) == 0.0)
        for (int i = 0; i < kNumProviders; ++i) sol.provider[i].price[e][t - 1] = inst.p_max;

  sol.provider[0].demand =
      linear_demand_table(inst, sol.provider[0].price, sol.provider[1].price);
  sol.provider[1].demand =
      linear_demand_table(inst, sol.provider[1].price, sol.provider[0].price);
  sol.provider[0].profit = provider_profit(inst, sol.provider[0].price, sol.provider[1].price,
                                           sol.provider[0].reroute);
  sol.provider[1].profit = provider_profit(inst, sol.provider[1].price, sol.provider[0].price,
                                           sol.provider[1].reroute);
  sol.potential = potential_value(inst, sol.provider[0].price, sol.provider[1].price,
                                  sol.provider[0].reroute, sol.provider[1].reroute);

  if (verify && qp.status == QpStatus::optimal) verify_gne(inst, sol, verify_tol, settings);
  return sol;
}

std::array<double, kNumProviders> verify_gne(const ProblemInstance& inst, GneSolution& profile,
                                             double tol, const SolverSettings& settings) {
  require_valid(inst);
  const double gate = std::max(tol, 1e-6);  // feasibility gate, relative
  const double pm = inst.p_max;
  const double demand_scale = std::max(inst.max_base_demand(), 1.0);

  for (int i = 0; i < kNumProviders; ++i) {
    const auto& tab = profile.provider[i];
    if (static_cast<int>(tab.price.size()) != inst.num_edges() ||
        static_cast<int>(tab.reroute.size()) != inst.num_edges())
      throw std::invalid_argument("profile tables do not match the instance");
    for (int e = 0; e < inst.num_edges(); ++e)
      for (int t = 1; t <= inst.horizon; ++t) {
        if (tab.price[e][t - 1] < -gate * pm || tab.price[e][t - 1] > (1.0 + gate) * pm)
          throw std::invalid_argument("profile price outside bounds");
        if (tab.reroute[e][t - 1] < -gate * demand_scale)
          throw std::invalid_argument("profile reroute negative");
      }
  }
  // Feasibility and the profile value live in the original game's terms:
  // captured demand is the clipped one. (The affine-demand reformulation is
  // used only for the best-response solves, where it is value-equivalent.)
  for (int i = 0; i < kNumProviders; ++i) {
    const int k = 1 - i;
    EdgeSlotTable demand =
        linear_demand_table(inst, profile.provider[i].price, profile.provider[k].price);
    for (auto& row : demand)
      for (double& d : row) d = std::max(d, 0.0);
    const NodeSlotTable states = propagate_states(inst, demand, profile.provider[i].reroute,
                                                  inst.fleets.initial_placement[i]);
    for (const auto& row : states)
      for (double v : row)
        if (v < -gate * std::max(inst.fleets.capacity[i], 1.0))
          throw std::invalid_argument("profile state negative");
  }

  std::array<double, kNumProviders> gains{};
  for (int i = 0; i < kNumProviders; ++i) {
    const int k = 1 - i;
    EdgeSlotTable rival = profile.provider[k].price;
    clamp_prices(rival, pm);  // shave solver-level noise off the box
    const AssembledGame br = assemble_best_response(inst, i, rival);
    const QpSolution qp = solve_qp(br.program, settings);
    if (qp.status != QpStatus::optimal)
      throw std::runtime_error("best-response solve did not reach optimality");
    const double br_value = qp.objective + br.objective_constant;
    const double profile_value = provider_profit(inst, profile.provider[i].price, rival,
                                                 profile.provider[i].reroute);
    gains[i] = br_value - profile_value;
  }
  profile.deviation_gain = gains;
  return gains;
}

bool is_gne(const std::array<double, kNumProviders>& gains,
            const std::array<double, kNumProviders>& profits, double tol) {
  for (int i = 0; i < kNumProviders; ++i)
    if (!(gains[i] <= tol * std::max(1.0, std::abs(profits[i])))) return false;
  return true;
}

SymmetryReport check_symmetry(const ProblemInstance& inst, const GneSolution& sol,
                              double eps_zero, double tol) {
  SymmetryReport report;
  if (eps_zero < 0) eps_zero = default_eps_zero(inst);

  const double cap_scale = std::max({inst.fleets.capacity[0], inst.fleets.capacity[1], 1.0});
  if (std::abs(inst.fleets.capacity[0] - inst.fleets.capacity[1]) > 1e-12 * cap_scale) {
    report.failed_precondition = "capacities differ";
    return report;
  }
  for (int j = 0; j < inst.num_nodes(); ++j)
    if (std::abs(inst.fleets.initial_placement[0][j] - inst.fleets.initial_placement[1][j]) >
        1e-12 * cap_scale) {
      report.failed_precondition = "initial placements differ";
      return report;
    }
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double d1 = sol.provider[0].demand[e][t - 1];
      const double d2 = sol.provider[1].demand[e][t - 1];
      if ((d1 > eps_zero) != (d2 > eps_zero)) {
        report.failed_precondition = "one-sided service on an origin-destination pair";
        return report;
      }
    }

  report.preconditions_hold = true;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      report.max_price_gap =
          std::max(report.max_price_gap, std::abs(sol.provider[0].price[e][t - 1] -
                                                  sol.provider[1].price[e][t - 1]));
      report.max_demand_gap =
          std::max(report.max_demand_gap, std::abs(sol.provider[0].demand[e][t - 1] -
                                                   sol.provider[1].demand[e][t - 1]));
    }
  report.symmetric = report.max_price_gap <= tol * inst.p_max &&
                     report.max_demand_gap <= tol * std::max(inst.max_base_demand(), 1.0);
  return report;
}

MonopolySolution solve_monopoly(const ProblemInstance& inst, bool merged,
                                const SolverSettings& settings) {
  require_valid(inst);
  const AssembledGame game = assemble_monopoly(inst, merged);
  const QpSolution qp = solve_qp(game.program, settings);

  MonopolySolution sol;
  sol.status = qp.status;
  sol.iterations = qp.iterations;
  sol.primal_residual = qp.primal_residual;
  sol.stationarity_residual = qp.stationarity_residual;
  if (qp.status == QpStatus::infeasible) return sol;

  sol.price = extract_edge_table(inst, game.index, qp.x, VarKind::price, -1);
  sol.reroute = extract_edge_table(inst, game.index, qp.x, VarKind::reroute, -1);
  sol.state = extract_state_table(inst, game.index, qp.x, -1);
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t)
      if (inst.demand.at(e, t) == 0.0) sol.price[e][t - 1] = inst.p_max;
  sol.demand = monopoly_demand_table(inst, sol.price);
  sol.profit = monopoly_objective(inst, sol.price, sol.reroute);
  return sol;
}

MonopolySolution solve_partitioned_monopoly(const ProblemInstance& inst,
                                            const SolverSettings& settings) {
  require_valid(inst);
  const AssembledGame game = assemble_partitioned_monopoly(inst);
  const QpSolution qp = solve_qp(game.program, settings);

  MonopolySolution sol;
  sol.status = qp.status;
  sol.iterations = qp.iterations;
  sol.primal_residual = qp.primal_residual;
  sol.stationarity_residual = qp.stationarity_residual;
  if (qp.status == QpStatus::infeasible) return sol;

  sol.price = extract_edge_table(inst, game.index, qp.x, VarKind::price, -1);
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t)
      if (inst.demand.at(e, t) == 0.0) sol.price[e][t - 1] = inst.p_max;
  sol.demand = monopoly_demand_table(inst, sol.price);
  sol.has_partition = true;
  for (int s = 0; s < kNumProviders; ++s) {
    sol.split_demand[s] = extract_edge_table(inst, game.index, qp.x, VarKind::demand_split, s);
    sol.split_reroute[s] = extract_edge_table(inst, game.index, qp.x, VarKind::reroute, s);
    sol.split_state[s] = extract_state_table(inst, game.index, qp.x, s);
  }
  sol.reroute = zero_edge_table(inst);
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 0; t < inst.horizon; ++t)
      sol.reroute[e][t] = sol.split_reroute[0][e][t] + sol.split_reroute[1][e][t];
  sol.profit = monopoly_objective(inst, sol.price, sol.reroute);
  return sol;
}

EquivalenceReport monopoly_duopoly_equivalence(const ProblemInstance& inst, double eps_zero,
                                               const SolverSettings& settings,
                                               double verify_tol) {
  require_valid(inst);
  if (eps_zero < 0) eps_zero = default_eps_zero(inst);

  EquivalenceReport report;
  MonopolySolution part = solve_partitioned_monopoly(inst, settings);
  if (part.status != QpStatus::optimal)
    throw std::runtime_error("partitioned monopoly solve did not reach optimality");

  report.partition_condition_holds = true;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 0; t < inst.horizon; ++t) {
      const double d1 = std::max(part.split_demand[0][e][t], 0.0);
      const double d2 = std::max(part.split_demand[1][e][t], 0.0);
      report.max_split_product = std::max(report.max_split_product, d1 * d2);
      if (std::min(d1, d2) > eps_zero) report.partition_condition_holds = false;
    }
  report.deviation_gain = {kNaN, kNaN};
  if (!report.partition_condition_holds) return report;

  // Induced duopoly: a provider posts the monopoly price where its vehicle
  // set serves and the cap where it does not; repositioning is inherited.
  GneSolution& prof = report.constructed;
  for (int i = 0; i < kNumProviders; ++i) {
    auto& tab = prof.provider[i];
    tab.price = part.price;
    tab.reroute = part.split_reroute[i];
    for (int e = 0; e < inst.num_edges(); ++e)
      for (int t = 0; t < inst.horizon; ++t)
        if (part.split_demand[i][e][t] <= eps_zero) tab.price[e][t] = inst.p_max;
  }
  for (int i = 0; i < kNumProviders; ++i) {
    const int k = 1 - i;
    auto& tab = prof.provider[i];
    // This profile lives outside the deterrence-priced strategy space, so the
    // captured demand is the clipped one (zero where the set does not serve).
    tab.demand = linear_demand_table(inst, tab.price, prof.provider[k].price);
    for (auto& row : tab.demand)
      for (double& d : row) d = std::max(d, 0.0);
    tab.state = propagate_states(inst, tab.demand, tab.reroute,
                                 inst.fleets.initial_placement[i]);
  }
  prof.provider[0].profit = provider_profit(inst, prof.provider[0].price,
                                            prof.provider[1].price, prof.provider[0].reroute);
  prof.provider[1].profit = provider_profit(inst, prof.provider[1].price,
                                            prof.provider[0].price, prof.provider[1].reroute);
  prof.potential = potential_value(inst, prof.provider[0].price, prof.provider[1].price,
                                   prof.provider[0].reroute, prof.provider[1].reroute);
  prof.status = part.status;

  report.deviation_gain = verify_gne(inst, prof, verify_tol, settings);
  report.verdict = is_gne(report.deviation_gain,
                          {prof.provider[0].profit, prof.provider[1].profit}, verify_tol);
  return report;
}

GneSolution solve_stochastic_gne(const ProblemInstance& inst, const ScenarioSet& scenarios,
                                 const SolverSettings& settings) {
  require_valid(inst);
  const AssembledGame game = assemble_stochastic_game(inst, scenarios);
  const QpSolution qp = solve_qp(game.program, settings);

  GneSolution sol;
  sol.status = qp.status;
  sol.iterations = qp.iterations;
  sol.primal_residual = qp.primal_residual;
  sol.stationarity_residual = qp.stationarity_residual;
  sol.deviation_gain = {kNaN, kNaN};
  if (qp.status == QpStatus::infeasible) return sol;

  const int M = scenarios.size();
  for (int i = 0; i < kNumProviders; ++i) {
    auto& tab = sol.provider[i];
    tab.price = extract_edge_table(inst, game.index, qp.x, VarKind::price, i);
    tab.reroute = extract_edge_table(inst, game.index, qp.x, VarKind::reroute, i);
  }
  // Expected base demand decides which entries are dead weight.
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      double mean = 0.0;
      for (int m = 0; m < M; ++m) mean += scenarios.weights[m] * scenarios.demands[m].at(e, t);
      if (mean == 0.0)
        for (int i = 0; i < kNumProviders; ++i) sol.provider[i].price[e][t - 1] = inst.p_max;
    }

  sol.scenario_states.resize(M);
  for (int m = 0; m < M; ++m)
    for (int i = 0; i < kNumProviders; ++i)
      sol.scenario_states[m][i] = extract_state_table(inst, game.index, qp.x, i, m);

  const double pm = inst.p_max;
  for (int i = 0; i < kNumProviders; ++i) {
    const int k = 1 - i;
    auto& tab = sol.provider[i];
    tab.demand = zero_edge_table(inst);
    tab.state = sol.scenario_states[0][i];
    double profit = 0.0;
    for (int e = 0; e < inst.num_edges(); ++e)
      for (int t = 1; t <= inst.horizon; ++t) {
        const double p = tab.price[e][t - 1];
        const double rp = sol.provider[k].price[e][t - 1];
        double expected_captured = 0.0;
        for (int m = 0; m < M; ++m) {
          const double lin = scenarios.demands[m].at(e, t) *
                             (0.5 - p / pm + rp / (2.0 * pm));
          expected_captured += scenarios.weights[m] * std::max(lin, 0.0);
        }
        tab.demand[e][t - 1] = expected_captured;
        profit += (p - inst.costs.ride_at(e, t)) * expected_captured;
        profit -= inst.costs.reroute_at(e, t) * tab.reroute[e][t - 1];
      }
    tab.profit = profit;
  }
  sol.potential = qp.objective;
  return sol;
}

double max_deterrence_gap(const ProblemInstance& inst, const GneSolution& sol, double eps_zero) {
  if (eps_zero < 0) eps_zero = default_eps_zero(inst);
  double gap = 0.0;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double d1 = sol.provider[0].demand[e][t - 1];
      const double d2 = sol.provider[1].demand[e][t - 1];
      if (d1 > eps_zero || d2 > eps_zero) continue;
      const double p1 = sol.provider[0].price[e][t - 1];
      const double p2 = sol.provider[1].price[e][t - 1];
      gap = std::max(gap, std::abs(p1 - 0.5 * (inst.p_max + p2)));
      gap = std::max(gap, std::abs(p2 - 0.5 * (inst.p_max + p1)));
    }
  return gap;
}

}  // namespace rsp
