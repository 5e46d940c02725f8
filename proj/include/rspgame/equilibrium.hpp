#pragma once

#include <array>
#include <string>

#include "rspgame/programs.hpp"

namespace rsp {

struct ProviderTables {
  EdgeSlotTable price;    // p(i,j,l,t)
  EdgeSlotTable reroute;  // u(i,j,l,t)
  EdgeSlotTable demand;   // captured demand, affine form (>= -tol at feasible points)
  NodeSlotTable state;    // x(i,j,t)
  double profit = 0.0;
};

/// Variational equilibrium of the duopoly: prices, routings, induced demands
/// and states per provider, plus the solve diagnostics and the unilateral
/// deviation gains found by verification (NaN until verify_gne runs).
struct GneSolution {
  std::array<ProviderTables, kNumProviders> provider;
  double potential = 0.0;
  double primal_residual = 0.0;
  double stationarity_residual = 0.0;
  QpStatus status = QpStatus::max_iterations;
  int iterations = 0;
  std::array<double, kNumProviders> deviation_gain{};
  // Stochastic solves only: one state table per (scenario, provider).
  std::vector<std::array<NodeSlotTable, kNumProviders>> scenario_states;
};

struct MonopolySolution {
  EdgeSlotTable price;
  EdgeSlotTable reroute;
  EdgeSlotTable demand;
  NodeSlotTable state;
  double profit = 0.0;
  QpStatus status = QpStatus::max_iterations;
  int iterations = 0;
  double primal_residual = 0.0;
  double stationarity_residual = 0.0;
  bool has_partition = false;
  std::array<EdgeSlotTable, kNumProviders> split_demand;
  std::array<EdgeSlotTable, kNumProviders> split_reroute;
  std::array<NodeSlotTable, kNumProviders> split_state;
};

struct SymmetryReport {
  bool preconditions_hold = false;
  std::string failed_precondition;  // empty when preconditions hold
  double max_price_gap = 0.0;
  double max_demand_gap = 0.0;
  bool symmetric = false;  // meaningful only when preconditions hold
};

struct EquivalenceReport {
  bool partition_condition_holds = false;
  double max_split_product = 0.0;  // max over entries of dhat1*dhat2
  GneSolution constructed;         // induced duopoly profile (when condition holds)
  std::array<double, kNumProviders> deviation_gain{};
  bool verdict = false;
};

/// Classification threshold for "zero demand" entries: 1e-6 times the largest
/// base demand (with a tiny absolute floor for all-zero fields).
double default_eps_zero(const ProblemInstance& instance);

/// Maximizes the potential over the joint constraint set and unpacks the
/// variational equilibrium. Entries whose base demand is exactly zero carry
/// no force from the objective or constraints; their prices are reported at
/// the cap. When verify is set (and the solve is optimal) the deviation gains
/// are populated via verify_gne.
GneSolution solve_gne(const ProblemInstance& instance, const SolverSettings& settings = {},
                      bool verify = true, double verify_tol = 1e-4);

/// Best-response check: re-optimizes each provider against the profile's
/// rival prices and returns (best response value - profile value) per
/// provider, storing them in the profile. Throws if the profile is not
/// feasible to a loose gate (1e-4 relative) or a best-response solve fails.
std::array<double, kNumProviders> verify_gne(const ProblemInstance& instance,
                                             GneSolution& profile, double tol = 1e-4,
                                             const SolverSettings& settings = {});

/// Whether both gains clear tol * max(1, |profit|).
bool is_gne(const std::array<double, kNumProviders>& gains,
            const std::array<double, kNumProviders>& profits, double tol);

/// Equal-fleet symmetry check: verifies the preconditions (equal capacities,
/// identical initial placements, no one-sided service anywhere) and, when
/// they hold, measures the largest price and demand gaps between providers.
/// Gaps are compared against tol * p_max and tol * max base demand.
SymmetryReport check_symmetry(const ProblemInstance& instance, const GneSolution& solution,
                              double eps_zero = -1.0, double tol = 1e-4);

/// Single-provider benchmark; merged=true pools both fleets.
MonopolySolution solve_monopoly(const ProblemInstance& instance, bool merged = true,
                                const SolverSettings& settings = {});

/// Partitioned monopoly solve with per-set demand accounting.
MonopolySolution solve_partitioned_monopoly(const ProblemInstance& instance,
                                            const SolverSettings& settings = {});

/// Partition test: solves the partitioned monopoly, checks that no entry is
/// served by both vehicle sets (min(dhat1, dhat2) <= eps_zero everywhere),
/// and if so builds the induced duopoly profile (monopoly price where a set
/// serves, the cap where it does not) and verifies it as an equilibrium.
EquivalenceReport monopoly_duopoly_equivalence(const ProblemInstance& instance,
                                               double eps_zero = -1.0,
                                               const SolverSettings& settings = {},
                                               double verify_tol = 1e-4);

/// Scenario game: shared prices and routings, per-scenario states. Profits
/// are expectations; deviation gains are not populated.
GneSolution solve_stochastic_gne(const ProblemInstance& instance, const ScenarioSet& scenarios,
                                 const SolverSettings& settings = {});

// Table helpers shared by verification, serialization, and the CLI.
EdgeSlotTable linear_demand_table(const ProblemInstance& instance, const EdgeSlotTable& own,
                                  const EdgeSlotTable& rival);
EdgeSlotTable monopoly_demand_table(const ProblemInstance& instance, const EdgeSlotTable& prices);
NodeSlotTable propagate_states(const ProblemInstance& instance, const EdgeSlotTable& demand,
                               const EdgeSlotTable& reroute, const std::vector<double>& x0);
/// Max over slots of |available + in-transit - capacity| for one fleet.
/// In-transit counts departures (rides and repositioning) whose arrival slot
/// lies beyond t, including past the horizon.
double max_fleet_accounting_error(const ProblemInstance& instance, const EdgeSlotTable& demand,
                                  const EdgeSlotTable& reroute, const NodeSlotTable& state,
                                  double capacity);
/// Max over entries with both demands <= eps_zero (and positive base demand)
/// of |p_i - (p_max + p_k)/2|: the deterrence fixed-point gap.
double max_deterrence_gap(const ProblemInstance& instance, const GneSolution& solution,
                          double eps_zero = -1.0);

}  // namespace rsp
