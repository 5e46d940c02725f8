#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rspgame/qp.hpp"

// Optimality verification that shares nothing with the iterative solver:
// feasibility is measured directly, and stationarity multipliers are
// re-estimated by least squares over the active constraints, dropping
// wrong-signed inequality multipliers until the sign conditions hold.

namespace rsp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

KktReport check_kkt(const QuadraticProgram& program, const Eigen::VectorXd& x, double tol) {
  const int n = program.num_vars();
  if (x.size() != n) throw std::invalid_argument("point dimension mismatch");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");

  KktReport report;
  const Eigen::VectorXd g = program.quadratic * x + program.linear;

  const Eigen::VectorXd eq_val = program.eq_matrix * x;
  const Eigen::VectorXd in_val = program.in_matrix * x;

  double viol = 0.0;
  double fscale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
  for (int i = 0; i < eq_val.size(); ++i) {
    viol = std::max(viol, std::abs(eq_val[i] - program.eq_rhs[i]));
    fscale = std::max({fscale, std::abs(eq_val[i]), std::abs(program.eq_rhs[i])});
  }
  for (int i = 0; i < in_val.size(); ++i) {
    viol = std::max(viol, in_val[i] - program.in_rhs[i]);
    fscale = std::max({fscale, std::abs(in_val[i]), std::abs(program.in_rhs[i])});
  }
  for (int j = 0; j < n; ++j) {
    if (program.lower[j] > -kInf) viol = std::max(viol, program.lower[j] - x[j]);
    if (program.upper[j] < kInf) viol = std::max(viol, x[j] - program.upper[j]);
  }
  report.feasibility_residual = viol;
  report.feasibility_scale = fscale;

  // Active rows: [eq (free sign); in; +e_j at upper; -e_j at lower], the
  // signed ones requiring nonnegative multipliers in g = A_act' lambda.
  const double act_tol = std::max(tol, 1e-8);
  struct Row {
    int kind;  // 0 eq, 1 in, 2 upper bound, 3 lower bound
    int index;
  };
  std::vector<Row> rows;
  for (int i = 0; i < eq_val.size(); ++i) rows.push_back({0, i});
  for (int i = 0; i < in_val.size(); ++i)
    if (in_val[i] >= program.in_rhs[i] - act_tol * std::max(1.0, std::abs(program.in_rhs[i])))
      rows.push_back({1, i});
  for (int j = 0; j < n; ++j) {
    if (program.upper[j] < kInf &&
        x[j] >= program.upper[j] - act_tol * std::max(1.0, std::abs(program.upper[j])))
      rows.push_back({2, j});
    if (program.lower[j] > -kInf &&
        x[j] <= program.lower[j] + act_tol * std::max(1.0, std::abs(program.lower[j])))
      rows.push_back({3, j});
  }

  Eigen::VectorXd residual = g;
  double multiplier_norm = 0.0;
  for (int pass = 0; pass < 4 && !rows.empty(); ++pass) {
    const int ma = static_cast<int>(rows.size());
    std::vector<int> eq_map(eq_val.size(), -1), in_map(in_val.size(), -1);
    for (int r = 0; r < ma; ++r) {
      if (rows[r].kind == 0) eq_map[rows[r].index] = r;
      if (rows[r].kind == 1) in_map[rows[r].index] = r;
    }
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < program.eq_matrix.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(program.eq_matrix, k); it; ++it)
        if (eq_map[it.row()] >= 0)
          trip.emplace_back(eq_map[it.row()], static_cast<int>(it.col()), it.value());
    for (int k = 0; k < program.in_matrix.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(program.in_matrix, k); it; ++it)
        if (in_map[it.row()] >= 0)
          trip.emplace_back(in_map[it.row()], static_cast<int>(it.col()), it.value());
    for (int r = 0; r < ma; ++r) {
      if (rows[r].kind == 2) trip.emplace_back(r, rows[r].index, 1.0);
      if (rows[r].kind == 3) trip.emplace_back(r, rows[r].index, -1.0);
    }
    Eigen::SparseMatrix<double> a_act(ma, n);
    a_act.setFromTriplets(trip.begin(), trip.end());

    // Min-norm multiplier estimate via regularized normal equations.
    Eigen::SparseMatrix<double> gram = Eigen::SparseMatrix<double>(a_act * a_act.transpose());
    double diag_max = 1.0;
    for (int i = 0; i < ma; ++i) diag_max = std::max(diag_max, gram.coeff(i, i));
    for (int i = 0; i < ma; ++i) gram.coeffRef(i, i) += 1e-10 * diag_max;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(gram);
    if (ldlt.info() != Eigen::Success) break;
    const Eigen::VectorXd lambda = ldlt.solve(a_act * g);

    bool dropped = false;
    std::vector<Row> kept;
    for (int r = 0; r < ma; ++r) {
      if (rows[r].kind != 0 && lambda[r] < 0) {
        dropped = true;
        continue;
      }
      kept.push_back(rows[r]);
    }
    if (!dropped || pass == 3) {
      // On the last pass a wrong-signed multiplier is clipped to zero, which
      // can only overstate the residual (no false passes).
      Eigen::VectorXd lambda_used = lambda;
      for (int r = 0; r < ma; ++r)
        if (rows[r].kind != 0 && lambda_used[r] < 0) lambda_used[r] = 0;
      const Eigen::VectorXd pulled = a_act.transpose() * lambda_used;
      residual = g - pulled;
      multiplier_norm = pulled.lpNorm<Eigen::Infinity>();
      break;
    }
    rows = std::move(kept);
    if (rows.empty()) {
      residual = g;
      multiplier_norm = 0.0;
    }
  }

  report.stationarity_residual = residual.lpNorm<Eigen::Infinity>();
  report.stationarity_scale = std::max({1.0, g.lpNorm<Eigen::Infinity>(), multiplier_norm});
  report.pass = report.feasibility_residual <= tol * report.feasibility_scale &&
                report.stationarity_residual <= tol * report.stationarity_scale;
  return report;
}

}  // namespace rsp
