#include "rspgame/programs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<int>> outgoing_edges(const ProblemInstance& inst) {
  std::vector<std::vector<int>> out(inst.num_nodes());
  for (int e = 0; e < inst.num_edges(); ++e) out[inst.network.edges[e].first].push_back(e);
  return out;
}

void require_valid(const ProblemInstance& inst) {
  const auto violations = validate_instance(inst);
  if (!violations.empty())
    throw std::invalid_argument("invalid instance: " + violations.front().field + ": " +
                                violations.front().message);
}

// Shared scaffolding for the five program families.
struct Builder {
  const ProblemInstance& inst;
  ArrivalSchedule arrivals;
  std::vector<std::vector<int>> out_edges;
  AssembledGame game;
  std::vector<Eigen::Triplet<double>> q_trip;   // quadratic objective
  Eigen::VectorXd linear;
  RowBlock eq, in;

  explicit Builder(const ProblemInstance& instance, GameKind kind)
      : inst(instance), arrivals(instance), out_edges(outgoing_edges(instance)) {
    game.kind = kind;
  }

  void add_price_vars(int owner) {
    for (int e = 0; e < inst.num_edges(); ++e) {
      const auto [j, l] = inst.network.edges[e];
      for (int t = 1; t <= inst.horizon; ++t)
        game.index.add({VarKind::price, owner, j, l, t, -1});
    }
  }
  void add_split_vars(int set) {
    for (int e = 0; e < inst.num_edges(); ++e) {
      const auto [j, l] = inst.network.edges[e];
      for (int t = 1; t <= inst.horizon; ++t)
        game.index.add({VarKind::demand_split, set, j, l, t, -1});
    }
  }
  void add_reroute_vars(int owner) {
    for (int e = 0; e < inst.num_edges(); ++e) {
      const auto [j, l] = inst.network.edges[e];
      for (int t = 1; t <= inst.horizon; ++t)
        game.index.add({VarKind::reroute, owner, j, l, t, -1});
    }
  }
  void add_state_vars(int owner, int scenario = -1) {
    for (int j = 0; j < inst.num_nodes(); ++j)
      for (int t = 1; t <= inst.horizon; ++t)
        game.index.add(scenario < 0 ? VarKey{VarKind::state, owner, j, -1, t, -1}
                                    : VarKey{VarKind::scenario_state, owner, j, -1, t, scenario});
  }

  int price(int owner, int e, int t) const {
    const auto [j, l] = inst.network.edges[e];
    return game.index.at({VarKind::price, owner, j, l, t, -1});
  }
  int reroute(int owner, int e, int t) const {
    const auto [j, l] = inst.network.edges[e];
    return game.index.at({VarKind::reroute, owner, j, l, t, -1});
  }
  int split(int set, int e, int t) const {
    const auto [j, l] = inst.network.edges[e];
    return game.index.at({VarKind::demand_split, set, j, l, t, -1});
  }

  void finalize() {
    const int n = game.index.size();
    QuadraticProgram& p = game.program;
    p.linear = linear;
    p.quadratic.resize(n, n);
    p.quadratic.setFromTriplets(q_trip.begin(), q_trip.end());
    p.eq_matrix.resize(eq.rows(), n);
    p.eq_matrix.setFromTriplets(eq.coefficients.begin(), eq.coefficients.end());
    p.eq_rhs = Eigen::Map<Eigen::VectorXd>(eq.rhs.data(), eq.rhs.size());
    p.in_matrix.resize(in.rows(), n);
    p.in_matrix.setFromTriplets(in.coefficients.begin(), in.coefficients.end());
    p.in_rhs = Eigen::Map<Eigen::VectorXd>(in.rhs.data(), in.rhs.size());
    game.eq_tags = eq.tags;
    game.in_tags = in.tags;

    p.lower.resize(n);
    p.upper.resize(n);
    for (int col = 0; col < n; ++col) {
      switch (game.index.key(col).kind) {
        case VarKind::price:
          p.lower[col] = 0.0;
          p.upper[col] = inst.p_max;
          break;
        default:
          p.lower[col] = 0.0;
          p.upper[col] = kInf;
          break;
      }
    }
    p.variable_names.reserve(n);
    for (int col = 0; col < n; ++col) p.variable_names.push_back(game.index.name(col));
  }
};

RowTag flow_tag(DemandMode mode) {
  switch (mode) {
    case DemandMode::duopoly:
    case DemandMode::best_response:
      return RowTag::flow_balance;
    case DemandMode::monopoly:
      return RowTag::monopoly_flow_balance;
    case DemandMode::partitioned:
      return RowTag::partitioned_flow_balance;
    case DemandMode::scenario:
      return RowTag::scenario_flow_balance;
  }
  return RowTag::flow_balance;
}

}  // namespace

std::string_view row_tag_name(RowTag tag) {
  switch (tag) {
    case RowTag::flow_balance: return "flow_balance";
    case RowTag::monopoly_flow_balance: return "monopoly_flow_balance";
    case RowTag::partitioned_flow_balance: return "partitioned_flow_balance";
    case RowTag::scenario_flow_balance: return "scenario_flow_balance";
    case RowTag::demand_nonneg: return "demand_nonneg";
    case RowTag::scenario_demand_nonneg: return "scenario_demand_nonneg";
    case RowTag::demand_split: return "demand_split";
  }
  return "?";
}

std::string_view bound_tag(VarKind kind) {
  switch (kind) {
    case VarKind::price: return "price_bounds";
    case VarKind::reroute: return "reroute_nonneg";
    case VarKind::state: return "state_nonneg";
    case VarKind::scenario_state: return "state_nonneg";
    case VarKind::demand_split: return "split_nonneg";
  }
  return "?";
}

void assemble_flow_constraints(const ProblemInstance& inst, const ArrivalSchedule& arrivals,
                               const VariableIndex& index, DemandMode mode, int owner,
                               const EdgeSlotTable* rival_prices, const DemandField* base_demand,
                               int scenario, const std::vector<double>& initial_placement,
                               RowBlock& out) {
  const DemandField& field = base_demand ? *base_demand : inst.demand;
  const double pm = inst.p_max;
  const auto out_edges = outgoing_edges(inst);
  const RowTag tag = flow_tag(mode);

  const auto state_col = [&](int j, int t) {
    return mode == DemandMode::scenario
               ? index.at({VarKind::scenario_state, owner, j, -1, t, scenario})
               : index.at({VarKind::state, owner, j, -1, t, -1});
  };
  const auto price_owner = [&]() {
    return (mode == DemandMode::monopoly || mode == DemandMode::partitioned) ? -1 : owner;
  };
  const auto price_col = [&](int e, int t) {
    const auto [j, l] = inst.network.edges[e];
    return index.at({VarKind::price, price_owner(), j, l, t, -1});
  };
  const auto rival_col = [&](int e, int t) {
    const auto [j, l] = inst.network.edges[e];
    return index.at({VarKind::price, 1 - owner, j, l, t, -1});
  };
  const auto reroute_col = [&](int e, int t) {
    const auto [j, l] = inst.network.edges[e];
    const int u_owner = mode == DemandMode::monopoly ? -1 : owner;
    return index.at({VarKind::reroute, u_owner, j, l, t, -1});
  };
  const auto split_col = [&](int e, int t) {
    const auto [j, l] = inst.network.edges[e];
    return index.at({VarKind::demand_split, owner, j, l, t, -1});
  };

  for (int j = 0; j < inst.num_nodes(); ++j) {
    for (int t = 1; t <= inst.horizon; ++t) {
      const int row = out.rows();
      out.rhs.push_back(0.0);
      out.tags.push_back(tag);
      auto coef = [&](int col, double v) { out.coefficients.emplace_back(row, col, v); };

      // Departing demand enters with sign +1, arriving demand with -1; the
      // affine part of the demand expression moves to the right-hand side.
      const auto demand_term = [&](int e, int tau, double sign) {
        const double base = field.at(e, tau);
        if (base == 0.0) return;
        switch (mode) {
          case DemandMode::duopoly:
          case DemandMode::scenario:
            coef(price_col(e, tau), sign * (-base / pm));
            coef(rival_col(e, tau), sign * (base / (2.0 * pm)));
            out.rhs[row] -= sign * base / 2.0;
            break;
          case DemandMode::best_response: {
            coef(price_col(e, tau), sign * (-base / pm));
            const double rp = (*rival_prices)[e][tau - 1];
            out.rhs[row] -= sign * base * (0.5 + rp / (2.0 * pm));
            break;
          }
          case DemandMode::monopoly:
            coef(price_col(e, tau), sign * (-base / pm));
            out.rhs[row] -= sign * base;
            break;
          case DemandMode::partitioned:
            coef(split_col(e, tau), sign);
            break;
        }
      };

      coef(state_col(j, t), 1.0);
      if (t > 1)
        coef(state_col(j, t - 1), -1.0);
      else
        out.rhs[row] += initial_placement[j];

      for (int e : out_edges[j]) {
        coef(reroute_col(e, t), 1.0);
        demand_term(e, t, +1.0);
      }
      for (const auto& [e, tau] : arrivals.at(j, t)) {
        coef(reroute_col(e, tau), -1.0);
        demand_term(e, tau, -1.0);
      }
    }
  }
}

AssembledGame assemble_potential_game(const ProblemInstance& inst) {
  require_valid(inst);
  Builder b(inst, GameKind::potential);
  for (int i = 0; i < kNumProviders; ++i) b.add_price_vars(i);
  for (int i = 0; i < kNumProviders; ++i) b.add_reroute_vars(i);
  for (int i = 0; i < kNumProviders; ++i) b.add_state_vars(i);
  b.linear = Eigen::VectorXd::Zero(b.game.index.size());

  const double pm = inst.p_max;
  for (int e = 0; e < inst.num_edges(); ++e) {
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      const double c = inst.costs.ride_at(e, t);
      if (base > 0.0) {
        const int p0 = b.price(0, e, t), p1 = b.price(1, e, t);
        b.q_trip.emplace_back(p0, p0, -2.0 * base / pm);
        b.q_trip.emplace_back(p1, p1, -2.0 * base / pm);
        b.q_trip.emplace_back(p0, p1, base / (2.0 * pm));
        b.q_trip.emplace_back(p1, p0, base / (2.0 * pm));
        b.linear[p0] += base / 2.0 + c * base / pm;
        b.linear[p1] += base / 2.0 + c * base / pm;
        b.game.omitted_cost_constant += -c * base;  // -c*D/2 per provider
      }
      for (int i = 0; i < kNumProviders; ++i)
        b.linear[b.reroute(i, e, t)] -= inst.costs.reroute_at(e, t);
    }
  }

  for (int i = 0; i < kNumProviders; ++i)
    assemble_flow_constraints(inst, b.arrivals, b.game.index, DemandMode::duopoly, i, nullptr,
                              nullptr, -1, inst.fleets.initial_placement[i], b.eq);

  for (int i = 0; i < kNumProviders; ++i)
    for (int e = 0; e < inst.num_edges(); ++e)
      for (int t = 1; t <= inst.horizon; ++t) {
        const double base = inst.demand.at(e, t);
        if (base <= 0.0) continue;
        const int row = b.in.rows();
        b.in.rhs.push_back(base / 2.0);
        b.in.tags.push_back(RowTag::demand_nonneg);
        b.in.coefficients.emplace_back(row, b.price(i, e, t), base / pm);
        b.in.coefficients.emplace_back(row, b.price(1 - i, e, t), -base / (2.0 * pm));
      }

  b.finalize();
  return b.game;
}

AssembledGame assemble_best_response(const ProblemInstance& inst, int provider,
                                     const EdgeSlotTable& rival_prices) {
  require_valid(inst);
  if (provider < 0 || provider >= kNumProviders)
    throw std::invalid_argument("provider index out of range");
  if (static_cast<int>(rival_prices.size()) != inst.num_edges())
    throw std::invalid_argument("rival price table must cover every edge");
  for (const auto& row : rival_prices) {
    if (static_cast<int>(row.size()) != inst.horizon)
      throw std::invalid_argument("rival price table must cover every slot");
    for (double p : row)
      if (p < 0.0 || p > inst.p_max)
        throw std::invalid_argument("rival price outside [0, p_max]");
  }

  Builder b(inst, GameKind::best_response);
  b.game.provider = provider;
  b.game.rival_prices = rival_prices;
  b.add_price_vars(provider);
  b.add_reroute_vars(provider);
  b.add_state_vars(provider);
  b.linear = Eigen::VectorXd::Zero(b.game.index.size());

  const double pm = inst.p_max;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      const double c = inst.costs.ride_at(e, t);
      const double rp = rival_prices[e][t - 1];
      if (base > 0.0) {
        const int p = b.price(provider, e, t);
        b.q_trip.emplace_back(p, p, -2.0 * base / pm);
        b.linear[p] += base * (0.5 + rp / (2.0 * pm)) + c * base / pm;
        b.game.objective_constant += -c * base * (0.5 + rp / (2.0 * pm));
      }
      b.linear[b.reroute(provider, e, t)] -= inst.costs.reroute_at(e, t);
    }

  assemble_flow_constraints(inst, b.arrivals, b.game.index, DemandMode::best_response, provider,
                            &rival_prices, nullptr, -1, inst.fleets.initial_placement[provider],
                            b.eq);

  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      if (base <= 0.0) continue;
      const double rp = rival_prices[e][t - 1];
      const int row = b.in.rows();
      b.in.rhs.push_back(base * (0.5 + rp / (2.0 * pm)));
      b.in.tags.push_back(RowTag::demand_nonneg);
      b.in.coefficients.emplace_back(row, b.price(provider, e, t), base / pm);
    }

  b.finalize();
  return b.game;
}

namespace {

void add_single_price_objective(Builder& b, const ProblemInstance& inst) {
  const double pm = inst.p_max;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      if (base <= 0.0) continue;
      const double c = inst.costs.ride_at(e, t);
      const int p = b.price(-1, e, t);
      b.q_trip.emplace_back(p, p, -2.0 * base / pm);
      b.linear[p] += base + c * base / pm;
      b.game.objective_constant += -c * base;
    }
}

}  // namespace

AssembledGame assemble_monopoly(const ProblemInstance& inst, bool merged) {
  require_valid(inst);
  Builder b(inst, GameKind::monopoly);
  b.add_price_vars(-1);
  b.add_reroute_vars(-1);
  b.add_state_vars(-1);
  b.linear = Eigen::VectorXd::Zero(b.game.index.size());

  add_single_price_objective(b, inst);
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t)
      b.linear[b.reroute(-1, e, t)] -= inst.costs.reroute_at(e, t);

  std::vector<double> placement = inst.fleets.initial_placement[0];
  if (merged)
    for (int j = 0; j < inst.num_nodes(); ++j)
      placement[j] += inst.fleets.initial_placement[1][j];

  assemble_flow_constraints(inst, b.arrivals, b.game.index, DemandMode::monopoly, -1, nullptr,
                            nullptr, -1, placement, b.eq);
  b.finalize();
  return b.game;
}

AssembledGame assemble_partitioned_monopoly(const ProblemInstance& inst) {
  require_valid(inst);
  Builder b(inst, GameKind::partitioned_monopoly);
  b.add_price_vars(-1);
  for (int s = 0; s < kNumProviders; ++s) b.add_split_vars(s);
  for (int s = 0; s < kNumProviders; ++s) b.add_reroute_vars(s);
  for (int s = 0; s < kNumProviders; ++s) b.add_state_vars(s);
  b.linear = Eigen::VectorXd::Zero(b.game.index.size());

  add_single_price_objective(b, inst);
  for (int s = 0; s < kNumProviders; ++s)
    for (int e = 0; e < inst.num_edges(); ++e)
      for (int t = 1; t <= inst.horizon; ++t)
        b.linear[b.reroute(s, e, t)] -= inst.costs.reroute_at(e, t);

  for (int s = 0; s < kNumProviders; ++s)
    assemble_flow_constraints(inst, b.arrivals, b.game.index, DemandMode::partitioned, s, nullptr,
                              nullptr, -1, inst.fleets.initial_placement[s], b.eq);

  // Split coupling: the two set demands add up to the single-price demand.
  const double pm = inst.p_max;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      const int row = b.eq.rows();
      b.eq.rhs.push_back(base);
      b.eq.tags.push_back(RowTag::demand_split);
      b.eq.coefficients.emplace_back(row, b.split(0, e, t), 1.0);
      b.eq.coefficients.emplace_back(row, b.split(1, e, t), 1.0);
      if (base > 0.0) b.eq.coefficients.emplace_back(row, b.price(-1, e, t), base / pm);
    }

  b.finalize();
  return b.game;
}

AssembledGame assemble_stochastic_game(const ProblemInstance& inst, const ScenarioSet& scenarios) {
  require_valid(inst);
  if (scenarios.size() == 0) throw std::invalid_argument("scenario set is empty");
  if (scenarios.demands.size() != scenarios.weights.size())
    throw std::invalid_argument("scenario weights and demands differ in length");
  double wsum = 0.0;
  for (double w : scenarios.weights) {
    if (w < 0.0) throw std::invalid_argument("scenario weights must be nonnegative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("scenario weights must sum to 1");
  for (const auto& field : scenarios.demands) {
    if (static_cast<int>(field.base.size()) != inst.num_edges())
      throw std::invalid_argument("scenario demand must cover every edge");
    for (const auto& row : field.base) {
      if (static_cast<int>(row.size()) != inst.horizon)
        throw std::invalid_argument("scenario demand must cover every slot");
      for (double d : row)
        if (d < 0.0) throw std::invalid_argument("scenario demand must be nonnegative");
    }
  }

  Builder b(inst, GameKind::stochastic);
  const int M = scenarios.size();
  for (int i = 0; i < kNumProviders; ++i) b.add_price_vars(i);
  for (int i = 0; i < kNumProviders; ++i) b.add_reroute_vars(i);
  for (int i = 0; i < kNumProviders; ++i)
    for (int m = 0; m < M; ++m) b.add_state_vars(i, m);
  b.linear = Eigen::VectorXd::Zero(b.game.index.size());

  const double pm = inst.p_max;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      double mean_base = 0.0;
      for (int m = 0; m < M; ++m) mean_base += scenarios.weights[m] * scenarios.demands[m].at(e, t);
      const double c = inst.costs.ride_at(e, t);
      if (mean_base > 0.0) {
        const int p0 = b.price(0, e, t), p1 = b.price(1, e, t);
        b.q_trip.emplace_back(p0, p0, -2.0 * mean_base / pm);
        b.q_trip.emplace_back(p1, p1, -2.0 * mean_base / pm);
        b.q_trip.emplace_back(p0, p1, mean_base / (2.0 * pm));
        b.q_trip.emplace_back(p1, p0, mean_base / (2.0 * pm));
        b.linear[p0] += mean_base / 2.0 + c * mean_base / pm;
        b.linear[p1] += mean_base / 2.0 + c * mean_base / pm;
        b.game.omitted_cost_constant += -c * mean_base;
      }
      for (int i = 0; i < kNumProviders; ++i)
        b.linear[b.reroute(i, e, t)] -= inst.costs.reroute_at(e, t);
    }

  for (int i = 0; i < kNumProviders; ++i)
    for (int m = 0; m < M; ++m)
      assemble_flow_constraints(inst, b.arrivals, b.game.index, DemandMode::scenario, i, nullptr,
                                &scenarios.demands[m], m, inst.fleets.initial_placement[i], b.eq);

  for (int m = 0; m < M; ++m)
    for (int i = 0; i < kNumProviders; ++i)
      for (int e = 0; e < inst.num_edges(); ++e)
        for (int t = 1; t <= inst.horizon; ++t) {
          const double base = scenarios.demands[m].at(e, t);
          if (base <= 0.0) continue;
          const int row = b.in.rows();
          b.in.rhs.push_back(base / 2.0);
          b.in.tags.push_back(RowTag::scenario_demand_nonneg);
          b.in.coefficients.emplace_back(row, b.price(i, e, t), base / pm);
          b.in.coefficients.emplace_back(row, b.price(1 - i, e, t), -base / (2.0 * pm));
        }

  b.finalize();
  return b.game;
}

Eigen::VectorXd feasibility_witness(const AssembledGame& game, const ProblemInstance& inst) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(game.index.size());
  std::vector<double> merged(inst.num_nodes(), 0.0);
  for (int j = 0; j < inst.num_nodes(); ++j)
    merged[j] =
        inst.fleets.initial_placement[0][j] + inst.fleets.initial_placement[1][j];

  for (int col = 0; col < game.index.size(); ++col) {
    const VarKey& k = game.index.key(col);
    switch (k.kind) {
      case VarKind::price:
        if (game.kind == GameKind::best_response) {
          const int e = inst.network.edge_index(k.node_from, k.node_to);
          x[col] = 0.5 * (inst.p_max + game.rival_prices[e][k.slot - 1]);
        } else {
          x[col] = inst.p_max;
        }
        break;
      case VarKind::reroute:
      case VarKind::demand_split:
        x[col] = 0.0;
        break;
      case VarKind::state:
      case VarKind::scenario_state: {
        const std::vector<double>& placement =
            (game.kind == GameKind::monopoly)
                ? merged
                : inst.fleets.initial_placement[std::max(k.owner, 0)];
        x[col] = placement[k.node_from];
        break;
      }
    }
  }
  return x;
}

double provider_objective(const ProblemInstance& inst, const EdgeSlotTable& own_prices,
                          const EdgeSlotTable& rival_prices, const EdgeSlotTable& own_reroutes) {
  const double pm = inst.p_max;
  double total = 0.0;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      const double p = own_prices[e][t - 1];
      const double rp = rival_prices[e][t - 1];
      const double lin = base * (0.5 - p / pm + rp / (2.0 * pm));
      total += (p - inst.costs.ride_at(e, t)) * lin -
               inst.costs.reroute_at(e, t) * own_reroutes[e][t - 1];
    }
  return total;
}

double provider_profit(const ProblemInstance& inst, const EdgeSlotTable& own_prices,
                       const EdgeSlotTable& rival_prices, const EdgeSlotTable& own_reroutes) {
  const double pm = inst.p_max;
  double total = 0.0;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      const double p = own_prices[e][t - 1];
      const double rp = rival_prices[e][t - 1];
      const double captured = std::max(base * (0.5 - p / pm + rp / (2.0 * pm)), 0.0);
      total += (p - inst.costs.ride_at(e, t)) * captured -
               inst.costs.reroute_at(e, t) * own_reroutes[e][t - 1];
    }
  return total;
}

double potential_value(const ProblemInstance& inst, const EdgeSlotTable& prices1,
                       const EdgeSlotTable& prices2, const EdgeSlotTable& reroutes1,
                       const EdgeSlotTable& reroutes2) {
  const double pm = inst.p_max;
  double total = 0.0;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      const double c = inst.costs.ride_at(e, t);
      const double cp = inst.costs.reroute_at(e, t);
      const double p1 = prices1[e][t - 1], p2 = prices2[e][t - 1];
      total += p1 * p2 * base / (2.0 * pm);
      total += p1 * base * (0.5 - p1 / pm) + c * base * p1 / pm - cp * reroutes1[e][t - 1];
      total += p2 * base * (0.5 - p2 / pm) + c * base * p2 / pm - cp * reroutes2[e][t - 1];
    }
  return total;
}

double monopoly_objective(const ProblemInstance& inst, const EdgeSlotTable& prices,
                          const EdgeSlotTable& reroutes) {
  const double pm = inst.p_max;
  double total = 0.0;
  for (int e = 0; e < inst.num_edges(); ++e)
    for (int t = 1; t <= inst.horizon; ++t) {
      const double base = inst.demand.at(e, t);
      const double p = prices[e][t - 1];
      total += (p - inst.costs.ride_at(e, t)) * base * (1.0 - p / pm) -
               inst.costs.reroute_at(e, t) * reroutes[e][t - 1];
    }
  return total;
}

}  // namespace rsp
