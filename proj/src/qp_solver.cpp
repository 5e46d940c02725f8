#include "rspgame/qp.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

// Operator-splitting method for convex QP, in the OSQP family: the program is
// rewritten as  minimize 0.5 x'Px + c'x  s.t.  l <= [A_eq; A_in; I_box] x <= u
// with P = -Q, and iterated with relaxed ADMM over a quasi-definite KKT
// factorization. Ruiz equilibration handles the poor conditioning that mixed
// demand/price magnitudes produce; an active-set polish step lifts the
// moderate-accuracy ADMM iterate to tight tolerances once the active set has
// settled.

namespace rsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSigma = 1e-6;
constexpr double kAlpha = 1.6;
constexpr double kRho0 = 0.1;
constexpr double kRhoEqScale = 1e3;
constexpr double kRhoMin = 1e-6;
constexpr double kRhoMax = 1e6;
constexpr int kCheckEvery = 25;
constexpr int kRhoEvery = 50;
constexpr int kRuizIters = 10;
constexpr double kPolishDelta = 1e-8;
constexpr double kPrimalInfeasTol = 1e-6;

struct Stacked {
  Eigen::SparseMatrix<double> P;  // n x n, full symmetric storage
  Eigen::VectorXd c;
  Eigen::SparseMatrix<double> A;  // m x n, rows [eq; in; box]
  Eigen::VectorXd l, u;
  int n = 0, m = 0, m_eq = 0, m_in = 0;
};

Stacked stack_program(const QuadraticProgram& prog) {
  Stacked s;
  s.n = prog.num_vars();
  s.m_eq = static_cast<int>(prog.eq_rhs.size());
  s.m_in = static_cast<int>(prog.in_rhs.size());

  std::vector<int> box_vars;
  for (int j = 0; j < s.n; ++j)
    if (prog.lower[j] > -kInf || prog.upper[j] < kInf) box_vars.push_back(j);
  s.m = s.m_eq + s.m_in + static_cast<int>(box_vars.size());

  s.P = -prog.quadratic;
  s.c = -prog.linear;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(prog.eq_matrix.nonZeros() + prog.in_matrix.nonZeros() + box_vars.size());
  for (int k = 0; k < prog.eq_matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(prog.eq_matrix, k); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int k = 0; k < prog.in_matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(prog.in_matrix, k); it; ++it)
      trip.emplace_back(s.m_eq + static_cast<int>(it.row()), static_cast<int>(it.col()),
                        it.value());
  for (size_t r = 0; r < box_vars.size(); ++r)
    trip.emplace_back(s.m_eq + s.m_in + static_cast<int>(r), box_vars[r], 1.0);
  s.A.resize(s.m, s.n);
  s.A.setFromTriplets(trip.begin(), trip.end());

  s.l.resize(s.m);
  s.u.resize(s.m);
  s.l.head(s.m_eq) = prog.eq_rhs;
  s.u.head(s.m_eq) = prog.eq_rhs;
  s.l.segment(s.m_eq, s.m_in).setConstant(-kInf);
  s.u.segment(s.m_eq, s.m_in) = prog.in_rhs;
  for (size_t r = 0; r < box_vars.size(); ++r) {
    s.l[s.m_eq + s.m_in + static_cast<int>(r)] = prog.lower[box_vars[r]];
    s.u[s.m_eq + s.m_in + static_cast<int>(r)] = prog.upper[box_vars[r]];
  }
  return s;
}

// Modified Ruiz equilibration plus cost scaling, as in operator-splitting
// solvers: D scales columns, E scales rows of A, gamma scales the objective.
struct Scaling {
  Eigen::VectorXd D, E;
  double gamma = 1.0;
};

Scaling equilibrate(Stacked& s) {
  Scaling sc;
  sc.D = Eigen::VectorXd::Ones(s.n);
  sc.E = Eigen::VectorXd::Ones(s.m);
  sc.gamma = 1.0;

  Eigen::VectorXd col_norm(s.n), row_norm(s.m);
  for (int it = 0; it < kRuizIters; ++it) {
    col_norm.setZero();
    row_norm.setZero();
    for (int k = 0; k < s.P.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator e(s.P, k); e; ++e)
        col_norm[e.col()] = std::max(col_norm[e.col()], std::abs(e.value()));
    for (int k = 0; k < s.A.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator e(s.A, k); e; ++e) {
        col_norm[e.col()] = std::max(col_norm[e.col()], std::abs(e.value()));
        row_norm[e.row()] = std::max(row_norm[e.row()], std::abs(e.value()));
      }
    Eigen::VectorXd d(s.n), e(s.m);
    for (int j = 0; j < s.n; ++j)
      d[j] = col_norm[j] > 0 ? 1.0 / std::sqrt(std::clamp(col_norm[j], 1e-8, 1e8)) : 1.0;
    for (int i = 0; i < s.m; ++i)
      e[i] = row_norm[i] > 0 ? 1.0 / std::sqrt(std::clamp(row_norm[i], 1e-8, 1e8)) : 1.0;

    s.P = d.asDiagonal() * s.P * d.asDiagonal();
    s.A = e.asDiagonal() * s.A * d.asDiagonal();
    s.c = s.c.cwiseProduct(d);
    sc.D = sc.D.cwiseProduct(d);
    sc.E = sc.E.cwiseProduct(e);

    // Cost scaling keeps the objective block comparable to the constraints.
    col_norm.setZero();
    for (int k = 0; k < s.P.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator e2(s.P, k); e2; ++e2)
        col_norm[e2.col()] = std::max(col_norm[e2.col()], std::abs(e2.value()));
    const double p_mean = s.n > 0 ? col_norm.sum() / s.n : 0.0;
    const double c_inf = s.c.size() > 0 ? s.c.lpNorm<Eigen::Infinity>() : 0.0;
    const double denom = std::max(p_mean, c_inf);
    if (denom > 0) {
      const double g = 1.0 / std::clamp(denom, 1e-8, 1e8);
      s.P *= g;
      s.c *= g;
      sc.gamma *= g;
    }
  }
  for (int i = 0; i < s.m; ++i) {
    if (s.l[i] > -kInf) s.l[i] *= sc.E[i];
    if (s.u[i] < kInf) s.u[i] *= sc.E[i];
  }
  return sc;
}

Eigen::SparseMatrix<double> build_kkt(const Stacked& s, const Eigen::VectorXd& rho) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(s.P.nonZeros() + 2 * s.A.nonZeros() + s.n + s.m);
  for (int k = 0; k < s.P.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.P, k); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int j = 0; j < s.n; ++j) trip.emplace_back(j, j, kSigma);
  for (int k = 0; k < s.A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.A, k); it; ++it) {
      trip.emplace_back(s.n + static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      trip.emplace_back(static_cast<int>(it.col()), s.n + static_cast<int>(it.row()), it.value());
    }
  for (int i = 0; i < s.m; ++i) trip.emplace_back(s.n + i, s.n + i, -1.0 / rho[i]);
  Eigen::SparseMatrix<double> kkt(s.n + s.m, s.n + s.m);
  kkt.setFromTriplets(trip.begin(), trip.end());
  return kkt;
}

struct Residuals {
  double prim = 0, dual = 0;        // unscaled infinity norms
  double prim_scale = 1, dual_scale = 1;
  bool prim_ok(double tol) const { return prim <= tol * prim_scale; }
  bool dual_ok(double tol) const { return dual <= tol * dual_scale; }
};

Residuals compute_residuals(const Stacked& s, const Scaling& sc, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& z, const Eigen::VectorXd& y) {
  Residuals r;
  const Eigen::VectorXd Ax_u = (s.A * x).cwiseQuotient(sc.E);
  const Eigen::VectorXd z_u = z.cwiseQuotient(sc.E);
  const Eigen::VectorXd Px_u = (s.P * x).cwiseProduct(sc.D.cwiseInverse()) / sc.gamma;
  const Eigen::VectorXd c_u = s.c.cwiseProduct(sc.D.cwiseInverse()) / sc.gamma;
  const Eigen::VectorXd Aty_u =
      (s.A.transpose() * y).cwiseProduct(sc.D.cwiseInverse()) / sc.gamma;

  r.prim = s.m > 0 ? (Ax_u - z_u).lpNorm<Eigen::Infinity>() : 0.0;
  r.prim_scale = std::max({1.0, s.m > 0 ? Ax_u.lpNorm<Eigen::Infinity>() : 0.0,
                           s.m > 0 ? z_u.lpNorm<Eigen::Infinity>() : 0.0});
  r.dual = (Px_u + c_u + Aty_u).lpNorm<Eigen::Infinity>();
  r.dual_scale = std::max({1.0, Px_u.lpNorm<Eigen::Infinity>(), c_u.lpNorm<Eigen::Infinity>(),
                           Aty_u.lpNorm<Eigen::Infinity>()});
  return r;
}

// Primal infeasibility certificate on the dual increment (unscaled).
bool primal_infeasibility_certificate(const Stacked& s, const Scaling& sc,
                                      const Eigen::VectorXd& dy_scaled) {
  if (s.m == 0) return false;
  const Eigen::VectorXd dy = dy_scaled.cwiseProduct(sc.E) / sc.gamma;
  const double dy_inf = dy.lpNorm<Eigen::Infinity>();
  if (dy_inf <= 0) return false;
  const Eigen::VectorXd Atdy =
      (s.A.transpose() * dy_scaled).cwiseProduct(sc.D.cwiseInverse()) / sc.gamma;
  if (Atdy.lpNorm<Eigen::Infinity>() > kPrimalInfeasTol * dy_inf) return false;

  double support = 0.0;
  for (int i = 0; i < s.m; ++i) {
    const double pos = std::max(dy[i], 0.0);
    const double neg = std::min(dy[i], 0.0);
    const double u_unscaled = s.u[i] < kInf ? s.u[i] / sc.E[i] : kInf;
    const double l_unscaled = s.l[i] > -kInf ? s.l[i] / sc.E[i] : -kInf;
    if (u_unscaled == kInf) {
      if (pos > kPrimalInfeasTol * dy_inf) return false;
    } else {
      support += u_unscaled * pos;
    }
    if (l_unscaled == -kInf) {
      if (neg < -kPrimalInfeasTol * dy_inf) return false;
    } else {
      support += l_unscaled * neg;
    }
  }
  return support <= -kPrimalInfeasTol * dy_inf;
}

struct PolishResult {
  bool accepted = false;
  Eigen::VectorXd x, z, y;
  Residuals res;
};

// Solve the equality-constrained QP on the active rows, with static
// regularization and iterative refinement against the unregularized system.
PolishResult polish_solution(const Stacked& s, const Scaling& sc, const Eigen::VectorXd& y,
                             double feas_tol, double opt_tol) {
  PolishResult out;
  std::vector<int> act_rows;
  std::vector<double> act_rhs;
  std::vector<int> act_sign;  // -1 lower, +1 upper, 0 equality
  for (int i = 0; i < s.m; ++i) {
    const bool is_eq = s.l[i] == s.u[i];
    if (is_eq) {
      act_rows.push_back(i);
      act_rhs.push_back(s.l[i]);
      act_sign.push_back(0);
    } else if (y[i] < 0 && s.l[i] > -kInf) {
      act_rows.push_back(i);
      act_rhs.push_back(s.l[i]);
      act_sign.push_back(-1);
    } else if (y[i] > 0 && s.u[i] < kInf) {
      act_rows.push_back(i);
      act_rhs.push_back(s.u[i]);
      act_sign.push_back(+1);
    }
  }
  const int ma = static_cast<int>(act_rows.size());

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(s.P.nonZeros() + s.n + 2 * s.A.nonZeros() + ma);
  for (int k = 0; k < s.P.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.P, k); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int j = 0; j < s.n; ++j) trip.emplace_back(j, j, kPolishDelta);
  // Gather active rows of A.
  std::vector<int> row_to_act(s.m, -1);
  for (int r = 0; r < ma; ++r) row_to_act[act_rows[r]] = r;
  for (int k = 0; k < s.A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.A, k); it; ++it) {
      const int r = row_to_act[it.row()];
      if (r < 0) continue;
      trip.emplace_back(s.n + r, static_cast<int>(it.col()), it.value());
      trip.emplace_back(static_cast<int>(it.col()), s.n + r, it.value());
    }
  for (int r = 0; r < ma; ++r) trip.emplace_back(s.n + r, s.n + r, -kPolishDelta);
  Eigen::SparseMatrix<double> kkt(s.n + ma, s.n + ma);
  kkt.setFromTriplets(trip.begin(), trip.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(kkt);
  if (ldlt.info() != Eigen::Success) return out;

  Eigen::VectorXd rhs(s.n + ma);
  rhs.head(s.n) = -s.c;
  for (int r = 0; r < ma; ++r) rhs[s.n + r] = act_rhs[r];

  Eigen::VectorXd w = ldlt.solve(rhs);
  // Refinement vs the unregularized KKT operator.
  for (int pass = 0; pass < 4; ++pass) {
    Eigen::VectorXd resid = rhs - kkt * w;
    resid.head(s.n) += kPolishDelta * w.head(s.n);
    resid.tail(ma) -= kPolishDelta * w.tail(ma);
    w += ldlt.solve(resid);
  }

  out.x = w.head(s.n);
  out.y = Eigen::VectorXd::Zero(s.m);
  for (int r = 0; r < ma; ++r) {
    double yr = w[s.n + r];
    // Wrong-sign multipliers are clipped; the residual check below then
    // decides honestly whether the polished point stands.
    if (act_sign[r] == -1 && yr > 0) yr = 0;
    if (act_sign[r] == +1 && yr < 0) yr = 0;
    out.y[act_rows[r]] = yr;
  }
  out.z = (s.A * out.x).cwiseMax(s.l).cwiseMin(s.u);
  out.res = compute_residuals(s, sc, out.x, out.z, out.y);
  out.accepted = out.res.prim_ok(feas_tol) && out.res.dual_ok(opt_tol);
  return out;
}

void validate_program(const QuadraticProgram& prog) {
  const int n = prog.num_vars();
  if (prog.quadratic.rows() != n || prog.quadratic.cols() != n)
    throw std::invalid_argument("quadratic matrix dimension mismatch");
  if (prog.eq_matrix.rows() != prog.eq_rhs.size() ||
      (prog.eq_matrix.rows() > 0 && prog.eq_matrix.cols() != n))
    throw std::invalid_argument("equality block dimension mismatch");
  if (prog.in_matrix.rows() != prog.in_rhs.size() ||
      (prog.in_matrix.rows() > 0 && prog.in_matrix.cols() != n))
    throw std::invalid_argument("inequality block dimension mismatch");
  if (prog.lower.size() != n || prog.upper.size() != n)
    throw std::invalid_argument("bound vectors must match variable count");
  if (!prog.variable_names.empty() && static_cast<int>(prog.variable_names.size()) != n)
    throw std::invalid_argument("variable_names must be empty or match variable count");
  Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(prog.quadratic.transpose()) -
                                     prog.quadratic;
  double max_q = 0.0;
  for (int k = 0; k < prog.quadratic.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(prog.quadratic, k); it; ++it)
      max_q = std::max(max_q, std::abs(it.value()));
  double asym = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
      asym = std::max(asym, std::abs(it.value()));
  if (asym > 1e-12 * std::max(1.0, max_q))
    throw std::invalid_argument("quadratic matrix must be symmetric");
}

}  // namespace

double QuadraticProgram::objective_value(const Eigen::VectorXd& x) const {
  return 0.5 * x.dot(quadratic * x) + linear.dot(x);
}

QpSolution solve_qp(const QuadraticProgram& program, const SolverSettings& settings) {
  validate_program(program);
  if (settings.feas_tol <= 0 || settings.opt_tol <= 0)
    throw std::invalid_argument("tolerances must be positive");

  QpSolution sol;
  const int n = program.num_vars();

  for (int j = 0; j < n; ++j)
    if (program.lower[j] > program.upper[j]) {
      sol.status = QpStatus::infeasible;
      sol.x = Eigen::VectorXd::Zero(n);
      return sol;
    }

  Stacked s = stack_program(program);
  Scaling sc;
  sc.D = Eigen::VectorXd::Ones(s.n);
  sc.E = Eigen::VectorXd::Ones(s.m);
  if (settings.scaling) sc = equilibrate(s);

  Eigen::VectorXd rho(s.m);
  double rho_base = kRho0;
  auto set_rho = [&](double base) {
    for (int i = 0; i < s.m; ++i)
      rho[i] = (s.l[i] == s.u[i]) ? std::min(base * kRhoEqScale, kRhoMax) : base;
  };
  set_rho(rho_base);

  Eigen::SparseMatrix<double> kkt = build_kkt(s, rho);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.analyzePattern(kkt);
  ldlt.factorize(kkt);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("KKT factorization failed");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(s.n);
  // z starts projected into [l, u] so (z, y) sits on the z = proj(v) manifold
  // of the splitting from the first step.
  Eigen::VectorXd z = Eigen::VectorXd::Zero(s.m).cwiseMax(s.l).cwiseMin(s.u);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(s.m);
  Eigen::VectorXd v_prev = z;
  Eigen::VectorXd rhs(s.n + s.m), w(s.n + s.m);

  Residuals res;
  size_t last_polish_hash = 0;
  int iter = 0;
  bool done = false;

  while (iter < settings.max_iterations && !done) {
    ++iter;
    rhs.head(s.n) = kSigma * x - s.c;
    rhs.tail(s.m) = z - y.cwiseQuotient(rho);
    w = ldlt.solve(rhs);
    const auto xt = w.head(s.n);
    const auto nu = w.tail(s.m);

    Eigen::VectorXd zt = z + (nu - y).cwiseQuotient(rho);
    Eigen::VectorXd x_next = kAlpha * xt + (1.0 - kAlpha) * x;
    Eigen::VectorXd v = kAlpha * zt + (1.0 - kAlpha) * z + y.cwiseQuotient(rho);
    Eigen::VectorXd z_next = v.cwiseMax(s.l).cwiseMin(s.u);
    Eigen::VectorXd y_next = rho.cwiseProduct(v - z_next);

    if (settings.log_merit) {
      const double merit = std::sqrt(kSigma * (x_next - x).squaredNorm() +
                                     (v - v_prev).cwiseProduct(rho).dot(v - v_prev));
      sol.merit_history.push_back(merit);
    }
    const Eigen::VectorXd dy = y_next - y;
    v_prev = v;
    x = x_next;
    z = z_next;
    y = y_next;

    if (iter % kCheckEvery != 0 && iter != settings.max_iterations) continue;

    res = compute_residuals(s, sc, x, z, y);
    if (res.prim_ok(settings.feas_tol) && res.dual_ok(settings.opt_tol)) {
      done = true;
    } else if (primal_infeasibility_certificate(s, sc, dy)) {
      sol.status = QpStatus::infeasible;
      sol.x = sc.D.cwiseProduct(x);
      sol.iterations = iter;
      sol.primal_residual = res.prim / res.prim_scale;
      sol.stationarity_residual = res.dual / res.dual_scale;
      sol.primal_residual_abs = res.prim;
      sol.stationarity_residual_abs = res.dual;
      return sol;
    }

    // Near convergence, try to land exactly with one active-set solve.
    const bool near = res.prim_ok(100 * settings.feas_tol) && res.dual_ok(100 * settings.opt_tol);
    if (settings.polish && (done || near)) {
      size_t hash = 1469598103934665603ull;
      for (int i = 0; i < s.m; ++i) {
        const unsigned byte = y[i] < 0 ? 1u : (y[i] > 0 ? 2u : 0u);
        hash = (hash ^ byte) * 1099511628211ull;
      }
      if (hash != last_polish_hash || done) {
        last_polish_hash = hash;
        PolishResult pol = polish_solution(s, sc, y, settings.feas_tol, settings.opt_tol);
        if (pol.accepted &&
            (!done || std::max(pol.res.prim / pol.res.prim_scale, pol.res.dual / pol.res.dual_scale) <=
                          std::max(res.prim / res.prim_scale, res.dual / res.dual_scale))) {
          x = pol.x;
          z = pol.z;
          y = pol.y;
          res = pol.res;
          sol.polished = true;
          done = true;
        }
      }
    }

    if (!done && settings.adaptive_rho && iter % kRhoEvery == 0) {
      const double pr = res.prim / res.prim_scale;
      const double dr = std::max(res.dual / res.dual_scale, 1e-14);
      const double ratio = std::sqrt(pr / dr);
      if (std::isfinite(ratio) && ratio > 0 && (ratio > 5.0 || ratio < 0.2)) {
        rho_base = std::clamp(rho_base * ratio, kRhoMin, kRhoMax);
        set_rho(rho_base);
        for (int i = 0; i < s.m; ++i) kkt.coeffRef(s.n + i, s.n + i) = -1.0 / rho[i];
        ldlt.factorize(kkt);
        if (ldlt.info() != Eigen::Success)
          throw std::runtime_error("KKT refactorization failed");
      }
    }
  }

  sol.iterations = iter;
  sol.status = done ? QpStatus::optimal : QpStatus::max_iterations;
  sol.x = sc.D.cwiseProduct(x);
  sol.objective = program.objective_value(sol.x);
  sol.primal_residual = res.prim / res.prim_scale;
  sol.stationarity_residual = res.dual / res.dual_scale;
  sol.primal_residual_abs = res.prim;
  sol.stationarity_residual_abs = res.dual;

  // Multipliers back in maximize convention (g = Qx + q = A' y_unscaled).
  const Eigen::VectorXd y_u = y.cwiseProduct(sc.E) / sc.gamma;
  sol.dual_eq = y_u.head(s.m_eq);
  sol.dual_in = y_u.segment(s.m_eq, s.m_in);
  sol.dual_bounds = Eigen::VectorXd::Zero(n);
  int r = s.m_eq + s.m_in;
  for (int j = 0; j < n; ++j)
    if (program.lower[j] > -kInf || program.upper[j] < kInf) sol.dual_bounds[j] = y_u[r++];
  return sol;
}

void dump_program(const QuadraticProgram& program, std::ostream& os,
                  const std::vector<std::string>& eq_row_tags,
                  const std::vector<std::string>& in_row_tags) {
  const int n = program.num_vars();
  os << "variables " << n << "\n";
  for (int j = 0; j < n; ++j)
    os << j << " " << (program.variable_names.empty() ? "x" + std::to_string(j)
                                                      : program.variable_names[j])
       << "\n";
  const auto coo = [&os](const char* name, const Eigen::SparseMatrix<double>& m) {
    os << name << " " << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    for (int k = 0; k < m.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
        os << it.row() << " " << it.col() << " " << it.value() << "\n";
  };
  const auto vec = [&os](const char* name, const Eigen::VectorXd& v) {
    os << name << " " << v.size() << "\n";
    for (int i = 0; i < v.size(); ++i) os << i << " " << v[i] << "\n";
  };
  os.precision(17);
  coo("Q", program.quadratic);
  vec("q", program.linear);
  coo("A_eq", program.eq_matrix);
  vec("b_eq", program.eq_rhs);
  if (!eq_row_tags.empty()) {
    os << "eq_tags " << eq_row_tags.size() << "\n";
    for (size_t i = 0; i < eq_row_tags.size(); ++i) os << i << " " << eq_row_tags[i] << "\n";
  }
  coo("A_in", program.in_matrix);
  vec("b_in", program.in_rhs);
  if (!in_row_tags.empty()) {
    os << "in_tags " << in_row_tags.size() << "\n";
    for (size_t i = 0; i < in_row_tags.size(); ++i) os << i << " " << in_row_tags[i] << "\n";
  }
  vec("lower", program.lower);
  vec("upper", program.upper);
}

}  // namespace rsp
