#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <iosfwd>
#include <string>
#include <vector>

namespace rsp {

/// Concave quadratic program over a polyhedron, in maximize form:
///
///   maximize   0.5 x' Q x + q' x
///   subject to eq_matrix x  = eq_rhs
///              in_matrix x <= in_rhs
///              lower <= x <= upper   (+-infinity entries allowed)
///
/// Q must be symmetric negative semidefinite. Symmetry and dimensions are
/// checked by solve_qp; semidefiniteness is the caller's contract (the game
/// assemblers only ever emit diagonally dominant price blocks).
struct QuadraticProgram {
  std::vector<std::string> variable_names;  // may be empty (unnamed columns)
  Eigen::SparseMatrix<double> quadratic;
  Eigen::VectorXd linear;
  Eigen::SparseMatrix<double> eq_matrix;
  Eigen::VectorXd eq_rhs;
  Eigen::SparseMatrix<double> in_matrix;
  Eigen::VectorXd in_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int num_vars() const { return static_cast<int>(linear.size()); }
  double objective_value(const Eigen::VectorXd& x) const;
};

struct SolverSettings {
  double feas_tol = 1e-7;      // primal tolerance on normalized constraints
  double opt_tol = 1e-6;       // stationarity tolerance, normalized
  int max_iterations = 200000;
  bool scaling = true;         // Ruiz equilibration
  bool adaptive_rho = true;    // off gives a fixed-penalty run (monotone merit)
  bool polish = true;          // active-set refinement once near convergence
  bool log_merit = false;      // record the merit sequence in the solution
};

enum class QpStatus { optimal, max_iterations, infeasible };

/// Residuals are reported twice: normalized by the problem scale
/// (max(1, |Ax|, |z|) primal, max(1, |Qx|, |q|, |A'y|) dual), which is what
/// the tolerances apply to, and as raw unscaled infinity norms.
struct QpSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
  double primal_residual = 0.0;
  double stationarity_residual = 0.0;
  double primal_residual_abs = 0.0;
  double stationarity_residual_abs = 0.0;
  QpStatus status = QpStatus::max_iterations;
  int iterations = 0;
  bool polished = false;
  // Multipliers in maximize convention: Qx + q = eq' dual_eq + in' dual_in
  // + dual_bounds, with dual_in >= 0 and dual_bounds signed (positive at an
  // active upper bound, negative at an active lower bound).
  Eigen::VectorXd dual_eq;
  Eigen::VectorXd dual_in;
  Eigen::VectorXd dual_bounds;
  std::vector<double> merit_history;  // filled when settings.log_merit
};

/// Operator-splitting (ADMM) solver. Deterministic: the same program and
/// settings always produce bit-identical iterates. Infeasibility is
/// detected from a divergence certificate on the dual increments and from
/// crossing bounds; unbounded problems exhaust the iteration budget.
QpSolution solve_qp(const QuadraticProgram& program, const SolverSettings& settings = {});

/// First-order optimality report recomputed from scratch, independent of the
/// solver: multipliers are re-estimated by sign-constrained least squares on
/// the constraints active at x.
struct KktReport {
  double feasibility_residual = 0.0;   // max violation, unscaled
  double stationarity_residual = 0.0;  // |Qx + q - A_act' lambda|_inf, unscaled
  double feasibility_scale = 1.0;      // pass thresholds: tol * scale
  double stationarity_scale = 1.0;
  bool pass = false;
};
KktReport check_kkt(const QuadraticProgram& program, const Eigen::VectorXd& x, double tol);

/// Plain-text dump: variable names, then COO triplets of every matrix block,
/// with optional per-row tags on the constraint blocks.
void dump_program(const QuadraticProgram& program, std::ostream& os,
                  const std::vector<std::string>& eq_row_tags = {},
                  const std::vector<std::string>& in_row_tags = {});

}  // namespace rsp
