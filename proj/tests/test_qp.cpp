#include <doctest.h>

#include <stdexcept>

#include <random>
#include <sstream>

#include "rspgame/qp.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

rsp::QuadraticProgram make_program(int n) {
  rsp::QuadraticProgram p;
  p.quadratic.resize(n, n);
  p.linear = Eigen::VectorXd::Zero(n);
  p.eq_matrix.resize(0, n);
  p.eq_rhs.resize(0);
  p.in_matrix.resize(0, n);
  p.in_rhs.resize(0);
  p.lower = Eigen::VectorXd::Constant(n, -kInf);
  p.upper = Eigen::VectorXd::Constant(n, kInf);
  return p;
}

// maximize -x^2 + x on [0, 1]
rsp::QuadraticProgram scalar_program() {
  auto p = make_program(1);
  p.quadratic.insert(0, 0) = -2.0;
  p.linear[0] = 1.0;
  p.lower[0] = 0.0;
  p.upper[0] = 1.0;
  return p;
}

// maximize -(x^2 + y^2) subject to x + y = 1
rsp::QuadraticProgram equality_program() {
  auto p = make_program(2);
  p.quadratic.insert(0, 0) = -2.0;
  p.quadratic.insert(1, 1) = -2.0;
  p.eq_matrix.resize(1, 2);
  p.eq_matrix.insert(0, 0) = 1.0;
  p.eq_matrix.insert(0, 1) = 1.0;
  p.eq_rhs.resize(1);
  p.eq_rhs[0] = 1.0;
  return p;
}

}  // namespace

TEST_CASE("scalar box program") {
  const auto sol = rsp::solve_qp(scalar_program());
  REQUIRE(sol.status == rsp::QpStatus::optimal);
  CHECK(sol.x[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.objective == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(sol.primal_residual <= 1e-7);
  CHECK(sol.stationarity_residual <= 1e-6);
}

TEST_CASE("equality-constrained program lands on the symmetric point") {
  const auto sol = rsp::solve_qp(equality_program());
  REQUIRE(sol.status == rsp::QpStatus::optimal);
  CHECK(sol.x[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sol.x[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("empty polyhedron is flagged infeasible") {
  auto p = make_program(1);
  p.quadratic.insert(0, 0) = -2.0;
  p.in_matrix.resize(2, 1);
  p.in_matrix.insert(0, 0) = -1.0;  // -x <= -1, i.e. x >= 1
  p.in_matrix.insert(1, 0) = 1.0;   // x <= 0
  p.in_rhs.resize(2);
  p.in_rhs[0] = -1.0;
  p.in_rhs[1] = 0.0;
  const auto sol = rsp::solve_qp(p);
  CHECK(sol.status == rsp::QpStatus::infeasible);

  auto boxes = make_program(1);
  boxes.quadratic.insert(0, 0) = -2.0;
  boxes.lower[0] = 1.0;
  boxes.upper[0] = 0.0;
  CHECK(rsp::solve_qp(boxes).status == rsp::QpStatus::infeasible);
}

TEST_CASE("kkt checker on reference points") {
  const auto p = scalar_program();
  SUBCASE("optimal point passes tightly") {
    const auto report = rsp::check_kkt(p, Eigen::VectorXd::Constant(1, 0.5), 1e-8);
    CHECK(report.pass);
    CHECK(report.stationarity_residual <= 1e-10);
  }
  SUBCASE("interior non-stationary point fails with the raw gradient") {
    const auto report = rsp::check_kkt(p, Eigen::VectorXd::Constant(1, 0.9), 1e-6);
    CHECK(!report.pass);
    CHECK(report.stationarity_residual == doctest::Approx(0.8));
  }
  SUBCASE("feasible but non-stationary against an equality") {
    Eigen::VectorXd x(2);
    x << 1.0, 0.0;
    const auto report = rsp::check_kkt(equality_program(), x, 1e-6);
    CHECK(!report.pass);
    CHECK(report.feasibility_residual <= 1e-12);
    CHECK(report.stationarity_residual == doctest::Approx(1.0));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(rsp::check_kkt(p, Eigen::VectorXd::Zero(3), 1e-6), std::invalid_argument);
  }
}

TEST_CASE("solver output passes the independent kkt check at 10x tolerances") {
  std::mt19937 rng(7u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.2, 2.0);
  rsp::SolverSettings settings;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    auto p = make_program(n);
    for (int j = 0; j < n; ++j) {
      p.quadratic.insert(j, j) = -unif(rng);
      p.linear[j] = gauss(rng);
      p.lower[j] = -1.5;
      p.upper[j] = 1.5;
    }
    // one coupling equality keeps the dual estimation honest
    p.eq_matrix.resize(1, n);
    for (int j = 0; j < n; ++j) p.eq_matrix.insert(0, j) = 1.0;
    p.eq_rhs.resize(1);
    p.eq_rhs[0] = 0.5;
    const auto sol = rsp::solve_qp(p, settings);
    REQUIRE(sol.status == rsp::QpStatus::optimal);
    const auto report =
        rsp::check_kkt(p, sol.x, 10.0 * std::max(settings.feas_tol, settings.opt_tol));
    CHECK(report.pass);
  }
}

TEST_CASE("repeat solves are bit-identical") {
  const auto p = equality_program();
  const auto a = rsp::solve_qp(p);
  const auto b = rsp::solve_qp(p);
  REQUIRE(a.x.size() == b.x.size());
  for (int j = 0; j < a.x.size(); ++j) CHECK(a.x[j] == b.x[j]);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
  CHECK(a.primal_residual == b.primal_residual);
}

TEST_CASE("fixed-penalty merit sequence is nonincreasing") {
  auto p = equality_program();
  p.lower = Eigen::VectorXd::Constant(2, -1.0);
  p.upper = Eigen::VectorXd::Constant(2, 2.0);
  rsp::SolverSettings settings;
  settings.adaptive_rho = false;
  settings.polish = false;
  settings.log_merit = true;
  const auto sol = rsp::solve_qp(p, settings);
  REQUIRE(sol.status == rsp::QpStatus::optimal);
  REQUIRE(sol.merit_history.size() > 10);
  for (size_t k = 1; k < sol.merit_history.size(); ++k)
    CHECK(sol.merit_history[k] <= sol.merit_history[k - 1] * (1.0 + 1e-9) + 1e-15);
}

TEST_CASE("scaling does not change the answer") {
  auto p = make_program(2);
  p.quadratic.insert(0, 0) = -80.0;  // deliberately skewed magnitudes
  p.quadratic.insert(1, 1) = -0.02;
  p.linear << 40.0, 0.01;
  p.lower << 0.0, 0.0;
  p.upper << 1.0, 5.0;
  rsp::SolverSettings scaled, unscaled;
  unscaled.scaling = false;
  const auto a = rsp::solve_qp(p, scaled);
  const auto b = rsp::solve_qp(p, unscaled);
  REQUIRE(a.status == rsp::QpStatus::optimal);
  REQUIRE(b.status == rsp::QpStatus::optimal);
  CHECK(a.x[0] == doctest::Approx(b.x[0]).epsilon(1e-5));
  CHECK(a.x[1] == doctest::Approx(b.x[1]).epsilon(1e-4));
}

TEST_CASE("program dump lists names and triplets") {
  auto p = scalar_program();
  p.variable_names = {"p(1,0,1,1)"};
  std::ostringstream os;
  rsp::dump_program(p, os, {}, {});
  const std::string text = os.str();
  CHECK(text.find("variables 1") != std::string::npos);
  CHECK(text.find("p(1,0,1,1)") != std::string::npos);
  CHECK(text.find("Q 1 1 1") != std::string::npos);
  CHECK(text.find("lower") != std::string::npos);
}
