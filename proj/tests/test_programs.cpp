#include <doctest.h>

#include <random>
#include <stdexcept>

#include "rspgame/programs.hpp"
#include "test_support.hpp"

using testsup::single_pair_instance;

namespace {

// Written-out objective of a game evaluated at a raw solution vector; the
// independent side of the gradient check.
double written_out_value(const rsp::AssembledGame& game, const rsp::ProblemInstance& inst,
                         const Eigen::VectorXd& x) {
  using testsup::edge_table_of;
  switch (game.kind) {
    case rsp::GameKind::potential:
      return rsp::potential_value(inst, edge_table_of(game, inst, x, rsp::VarKind::price, 0),
                                  edge_table_of(game, inst, x, rsp::VarKind::price, 1),
                                  edge_table_of(game, inst, x, rsp::VarKind::reroute, 0),
                                  edge_table_of(game, inst, x, rsp::VarKind::reroute, 1));
    case rsp::GameKind::best_response:
      return rsp::provider_objective(
                 inst, edge_table_of(game, inst, x, rsp::VarKind::price, game.provider),
                 game.rival_prices,
                 edge_table_of(game, inst, x, rsp::VarKind::reroute, game.provider)) -
             game.objective_constant;
    case rsp::GameKind::monopoly:
      return rsp::monopoly_objective(inst,
                                     edge_table_of(game, inst, x, rsp::VarKind::price, -1),
                                     edge_table_of(game, inst, x, rsp::VarKind::reroute, -1)) -
             game.objective_constant;
    default:
      throw std::logic_error("unsupported kind");
  }
}

Eigen::VectorXd random_point(const rsp::AssembledGame& game, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd x(game.index.size());
  for (int col = 0; col < game.index.size(); ++col) {
    const auto kind = game.index.key(col).kind;
    x[col] = kind == rsp::VarKind::price ? unif(rng) : 3.0 * unif(rng);
  }
  return x;
}

}  // namespace

TEST_CASE("potential price block is the fixed 2x2 pattern") {
  const auto inst = single_pair_instance(0.1);
  const auto game = rsp::assemble_potential_game(inst);
  const int e01 = inst.network.edge_index(0, 1);
  const auto [j, l] = inst.network.edges[e01];
  const int p0 = game.index.at({rsp::VarKind::price, 0, j, l, 1, -1});
  const int p1 = game.index.at({rsp::VarKind::price, 1, j, l, 1, -1});
  const double base = 40.0;
  CHECK(game.program.quadratic.coeff(p0, p0) == doctest::Approx(-2.0 * base));
  CHECK(game.program.quadratic.coeff(p1, p1) == doctest::Approx(-2.0 * base));
  CHECK(game.program.quadratic.coeff(p0, p1) == doctest::Approx(base / 2.0));
  CHECK(game.program.quadratic.coeff(p1, p0) == doctest::Approx(base / 2.0));
}

TEST_CASE("zero-demand pairs contribute nothing but their price box") {
  auto inst = single_pair_instance(0.1);
  inst.demand.base[inst.network.edge_index(1, 0)][0] = 0.0;
  const auto game = rsp::assemble_potential_game(inst);
  const int p0 = game.index.at({rsp::VarKind::price, 0, 1, 0, 1, -1});
  for (int k = 0; k < game.program.quadratic.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(game.program.quadratic, k); it; ++it) {
      CHECK(it.row() != p0);
      CHECK(it.col() != p0);
    }
  CHECK(game.program.linear[p0] == 0.0);
  for (int k = 0; k < game.program.in_matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(game.program.in_matrix, k); it; ++it)
      CHECK(it.col() != p0);
  CHECK(game.program.lower[p0] == 0.0);
  CHECK(game.program.upper[p0] == doctest::Approx(1.0));
}

TEST_CASE("assembled gradients match finite differences of the written objectives") {
  const auto inst = rsp::build_two_cluster_instance(2, 0.3, {12.0, 6.0}, 10.0, 0.1, 0.05, 0.2,
                                                    0.1, 1.0);
  std::mt19937 rng(11u);
  rsp::EdgeSlotTable rival(inst.num_edges(), std::vector<double>(inst.horizon, 0.0));
  for (auto& row : rival)
    for (double& v : row) v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

  const rsp::AssembledGame games[] = {rsp::assemble_potential_game(inst),
                                      rsp::assemble_best_response(inst, 0, rival),
                                      rsp::assemble_monopoly(inst, true)};
  for (const auto& game : games) {
    const Eigen::VectorXd x = random_point(game, rng);
    const Eigen::VectorXd grad = game.program.quadratic * x + game.program.linear;
    const double h = 1e-5;
    std::uniform_int_distribution<int> pick(0, game.index.size() - 1);
    for (int probe = 0; probe < 24; ++probe) {
      const int col = pick(rng);
      Eigen::VectorXd xp = x, xm = x;
      xp[col] += h;
      xm[col] -= h;
      const double fd =
          (written_out_value(game, inst, xp) - written_out_value(game, inst, xm)) / (2 * h);
      CHECK(grad[col] == doctest::Approx(fd).epsilon(1e-6));
    }
    // and the values themselves agree
    CHECK(game.program.objective_value(x) ==
          doctest::Approx(written_out_value(game, inst, x)).epsilon(1e-12));
  }
}

TEST_CASE("unilateral potential differences equal payoff differences") {
  const auto inst = rsp::build_two_cluster_instance(2, 0.3, {12.0, 6.0, 9.0}, 10.0, 0.1, 0.05,
                                                    0.2, 0.1, 1.0);
  std::mt19937 rng(23u);
  for (int trial = 0; trial < 10; ++trial) {
    testsup::Profile prof = testsup::sample_feasible_profile(inst, rng);
    const int mover = trial % 2;
    const double phi_before = rsp::potential_value(inst, prof.price[0], prof.price[1],
                                                   prof.reroute[0], prof.reroute[1]);
    const double payoff_before = rsp::provider_objective(inst, prof.price[mover],
                                                         prof.price[1 - mover],
                                                         prof.reroute[mover]);
    testsup::Profile deviated = prof;
    testsup::sample_deviation(inst, deviated, mover, rng);
    const double phi_after =
        rsp::potential_value(inst, deviated.price[0], deviated.price[1], deviated.reroute[0],
                             deviated.reroute[1]);
    const double payoff_after = rsp::provider_objective(inst, deviated.price[mover],
                                                        deviated.price[1 - mover],
                                                        deviated.reroute[mover]);
    const double gap = std::abs((phi_after - phi_before) - (payoff_after - payoff_before));
    CHECK(gap <= 1e-9 * std::max(1.0, std::abs(phi_before)));
  }
}

TEST_CASE("flow rows on the smallest instances") {
  SUBCASE("one slot: no arrivals, only departures") {
    const auto inst = single_pair_instance(0.0, 0.05, 100.0, 40.0, 1);
    const auto game = rsp::assemble_potential_game(inst);
    // provider 0, node 0, t=1: x + u + (price terms of the departing demand)
    const int row = 0;  // first assembled flow row
    const int x01 = game.index.at({rsp::VarKind::state, 0, 0, -1, 1, -1});
    const int u = game.index.at({rsp::VarKind::reroute, 0, 0, 1, 1, -1});
    const int p_own = game.index.at({rsp::VarKind::price, 0, 0, 1, 1, -1});
    const int p_rival = game.index.at({rsp::VarKind::price, 1, 0, 1, 1, -1});
    CHECK(game.program.eq_matrix.coeff(row, x01) == doctest::Approx(1.0));
    CHECK(game.program.eq_matrix.coeff(row, u) == doctest::Approx(1.0));
    CHECK(game.program.eq_matrix.coeff(row, p_own) == doctest::Approx(-40.0));
    CHECK(game.program.eq_matrix.coeff(row, p_rival) == doctest::Approx(20.0));
    // rhs = x0 - D/2
    CHECK(game.program.eq_rhs[row] == doctest::Approx(50.0 - 20.0));
    CHECK(game.eq_tags[row] == rsp::RowTag::flow_balance);
  }
  SUBCASE("two slots: slot-1 departures land at the far node in slot 2") {
    const auto inst = single_pair_instance(0.0, 0.05, 100.0, 40.0, 2);
    const auto game = rsp::assemble_potential_game(inst);
    // provider 0 rows ordered (node, t); node 1, t=2 is row index 3
    const int row = 3;
    const int u_dep = game.index.at({rsp::VarKind::reroute, 0, 0, 1, 1, -1});
    const int p_dep = game.index.at({rsp::VarKind::price, 0, 0, 1, 1, -1});
    CHECK(game.program.eq_matrix.coeff(row, u_dep) == doctest::Approx(-1.0));
    CHECK(game.program.eq_matrix.coeff(row, p_dep) == doctest::Approx(40.0));
    // rhs picks up +D/2 from the arriving demand and -D/2 from the departing one
    CHECK(game.program.eq_rhs[row] == doctest::Approx(0.0));
  }
}

TEST_CASE("every row carries a tag and the witness is feasible") {
  const auto inst = rsp::build_two_cluster_instance(2, 0.25, {12.0, 6.0}, 10.0, 0.1, 0.05, 0.2,
                                                    0.1, 1.0);
  rsp::EdgeSlotTable rival(inst.num_edges(), std::vector<double>(inst.horizon, 0.4));
  rsp::ScenarioSet scenarios;
  scenarios.weights = {0.25, 0.75};
  scenarios.demands = {inst.demand, inst.demand};
  for (auto& row : scenarios.demands[1].base)
    for (double& v : row) v *= 2.0;

  const rsp::AssembledGame games[] = {
      rsp::assemble_potential_game(inst), rsp::assemble_best_response(inst, 1, rival),
      rsp::assemble_monopoly(inst, true), rsp::assemble_partitioned_monopoly(inst),
      rsp::assemble_stochastic_game(inst, scenarios)};
  for (const auto& game : games) {
    CHECK(static_cast<int>(game.eq_tags.size()) == game.program.eq_rhs.size());
    CHECK(static_cast<int>(game.in_tags.size()) == game.program.in_rhs.size());

    const Eigen::VectorXd w = rsp::feasibility_witness(game, inst);
    const Eigen::VectorXd eq_resid = game.program.eq_matrix * w - game.program.eq_rhs;
    CHECK(eq_resid.lpNorm<Eigen::Infinity>() <= 1e-9);
    if (game.program.in_rhs.size() > 0) {
      const Eigen::VectorXd slack = game.program.in_matrix * w - game.program.in_rhs;
      CHECK(slack.maxCoeff() <= 1e-9);
    }
    for (int col = 0; col < game.index.size(); ++col) {
      CHECK(w[col] >= game.program.lower[col] - 1e-12);
      CHECK(w[col] <= game.program.upper[col] + 1e-12);
    }
  }
}

TEST_CASE("partitioned split rows couple the set demands to the price") {
  const auto inst = single_pair_instance(0.1, 0.05, 10.0, 40.0, 1);
  const auto game = rsp::assemble_partitioned_monopoly(inst);
  // split rows come after the two sets' flow rows (2 sets x 2 nodes x 1 slot)
  const int first_split = 4;
  REQUIRE(game.eq_tags.size() == 6);
  CHECK(game.eq_tags[first_split] == rsp::RowTag::demand_split);
  const int d0 = game.index.at({rsp::VarKind::demand_split, 0, 0, 1, 1, -1});
  const int d1 = game.index.at({rsp::VarKind::demand_split, 1, 0, 1, 1, -1});
  const int p = game.index.at({rsp::VarKind::price, -1, 0, 1, 1, -1});
  CHECK(game.program.eq_matrix.coeff(first_split, d0) == doctest::Approx(1.0));
  CHECK(game.program.eq_matrix.coeff(first_split, d1) == doctest::Approx(1.0));
  CHECK(game.program.eq_matrix.coeff(first_split, p) == doctest::Approx(40.0));
  CHECK(game.program.eq_rhs[first_split] == doctest::Approx(40.0));
}

TEST_CASE("scenario weights are validated") {
  const auto inst = single_pair_instance(0.1);
  rsp::ScenarioSet bad;
  bad.weights = {0.6, 0.6};
  bad.demands = {inst.demand, inst.demand};
  CHECK_THROWS_AS(rsp::assemble_stochastic_game(inst, bad), std::invalid_argument);
  bad.weights = {0.5, -0.5};
  CHECK_THROWS_AS(rsp::assemble_stochastic_game(inst, bad), std::invalid_argument);
}

TEST_CASE("best response rejects rival prices off the box") {
  const auto inst = single_pair_instance(0.1);
  rsp::EdgeSlotTable rival(inst.num_edges(), std::vector<double>(inst.horizon, 1.2));
  CHECK_THROWS_AS(rsp::assemble_best_response(inst, 0, rival), std::invalid_argument);
}
