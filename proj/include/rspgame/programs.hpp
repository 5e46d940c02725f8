#pragma once

#include <string_view>
#include <vector>

#include "rspgame/indexing.hpp"
#include "rspgame/instance.hpp"
#include "rspgame/qp.hpp"

namespace rsp {

/// [edge][t-1] table of reals over the instance's edge list.
using EdgeSlotTable = std::vector<std::vector<double>>;
/// [node][t-1] table of reals.
using NodeSlotTable = std::vector<std::vector<double>>;

/// Weighted joint demand realizations over the horizon. Weights must be
/// nonnegative and sum to one within 1e-12.
struct ScenarioSet {
  std::vector<double> weights;
  std::vector<DemandField> demands;
  int size() const { return static_cast<int>(weights.size()); }
};

enum class GameKind {
  potential,
  best_response,
  monopoly,
  partitioned_monopoly,
  stochastic,
};

/// Provenance of a constraint row. Bounds carry their provenance through
/// bound_tag(kind) instead: prices sit in a box, reroutes/states/splits are
/// nonnegative.
enum class RowTag {
  flow_balance,              // provider state balance, duopoly form
  monopoly_flow_balance,     // single-provider state balance
  partitioned_flow_balance,  // per-vehicle-set state balance
  scenario_flow_balance,     // per-scenario state balance
  demand_nonneg,             // captured demand stays nonnegative
  scenario_demand_nonneg,
  demand_split,              // dhat1 + dhat2 equals the single-price demand
};

std::string_view row_tag_name(RowTag tag);
std::string_view bound_tag(VarKind kind);

/// One assembled optimization problem plus everything needed to interpret it:
/// the variable bijection, per-row provenance tags, and the additive constant
/// separating the QP value from the written-out objective.
struct AssembledGame {
  QuadraticProgram program;
  VariableIndex index;
  GameKind kind = GameKind::potential;
  int provider = -1;                   // best-response games only
  double objective_constant = 0.0;     // written-out objective = QP value + this
  double omitted_cost_constant = 0.0;  // potential only: decision-free cost terms
                                       // absent from the potential's own form
  EdgeSlotTable rival_prices;          // best-response games only
  std::vector<RowTag> eq_tags, in_tags;
};

/// How the demand term inside a flow balance row is expressed.
enum class DemandMode {
  duopoly,        // affine in both providers' price variables
  best_response,  // affine in the owner's prices; rival prices folded into the rhs
  monopoly,       // affine in the shared price variables
  partitioned,    // a dedicated split-demand variable
  scenario,       // duopoly form with one scenario's base demand
};

/// State balance equalities for one provider (or vehicle set), one row per
/// (node, slot), appended to the triplet/rhs/tag builders. The index must
/// already contain every referenced variable.
struct RowBlock {
  std::vector<Eigen::Triplet<double>> coefficients;
  std::vector<double> rhs;
  std::vector<RowTag> tags;
  int rows() const { return static_cast<int>(rhs.size()); }
};
void assemble_flow_constraints(const ProblemInstance& instance, const ArrivalSchedule& arrivals,
                               const VariableIndex& index, DemandMode mode, int owner,
                               const EdgeSlotTable* rival_prices, const DemandField* base_demand,
                               int scenario, const std::vector<double>& initial_placement,
                               RowBlock& out);

AssembledGame assemble_potential_game(const ProblemInstance& instance);
AssembledGame assemble_best_response(const ProblemInstance& instance, int provider,
                                     const EdgeSlotTable& rival_prices);
/// merged=true pools both fleets (summed capacity and placements); otherwise
/// the single provider operates fleet 0.
AssembledGame assemble_monopoly(const ProblemInstance& instance, bool merged);
AssembledGame assemble_partitioned_monopoly(const ProblemInstance& instance);
AssembledGame assemble_stochastic_game(const ProblemInstance& instance,
                                       const ScenarioSet& scenarios);

/// The always-feasible profile: every price at its no-demand level (the cap,
/// or the deterrence level against fixed rival prices), no repositioning,
/// states carried forward unchanged.
Eigen::VectorXd feasibility_witness(const AssembledGame& game, const ProblemInstance& instance);

/// Written-out objective evaluators (price/reroute tables only; states do not
/// enter the objectives). `provider_objective` keeps the affine demand,
/// `provider_profit` clips it at zero.
double provider_objective(const ProblemInstance& instance, const EdgeSlotTable& own_prices,
                          const EdgeSlotTable& rival_prices, const EdgeSlotTable& own_reroutes);
double provider_profit(const ProblemInstance& instance, const EdgeSlotTable& own_prices,
                       const EdgeSlotTable& rival_prices, const EdgeSlotTable& own_reroutes);
double potential_value(const ProblemInstance& instance, const EdgeSlotTable& prices1,
                       const EdgeSlotTable& prices2, const EdgeSlotTable& reroutes1,
                       const EdgeSlotTable& reroutes2);
double monopoly_objective(const ProblemInstance& instance, const EdgeSlotTable& prices,
                          const EdgeSlotTable& reroutes);

}  // namespace rsp
