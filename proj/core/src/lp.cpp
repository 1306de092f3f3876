#include "banachlab/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "banachlab/errors.hpp"

namespace banachlab {
namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-8;

// Full-tableau simplex over columns [0, ncols).  `rows` basic variable per
// row.  Returns false when unbounded.
bool run_simplex(Eigen::MatrixXd& T, std::vector<int>& basis, int ncols,
                 long max_iter, bool& hit_limit) {
  const int m = static_cast<int>(T.rows()) - 1;
  const int obj = m;
  long stall = 0;
  double last_obj = T(obj, T.cols() - 1);
  for (long it = 0; it < max_iter; ++it) {
    const bool bland = stall > 64;
    int enter = -1;
    double best = -kReducedCostTol;
    for (int j = 0; j < ncols; ++j) {
      const double rj = T(obj, j);
      if (rj < -kReducedCostTol) {
        if (bland) {
          enter = j;
          break;
        }
        if (rj < best) {
          best = rj;
          enter = j;
        }
      }
    }
    if (enter < 0) return true;  // optimal

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    const int rhs = static_cast<int>(T.cols()) - 1;
    for (int i = 0; i < m; ++i) {
      const double a = T(i, enter);
      if (a > kPivotTol) {
        const double ratio = T(i, rhs) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded

    // Pivot on (leave, enter).
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = T(i, enter);
      if (factor != 0.0) T.row(i) -= factor * T.row(leave);
    }
    basis[leave] = enter;

    const double cur = T(obj, rhs);
    if (std::abs(cur - last_obj) < 1e-14) {
      ++stall;
    } else {
      stall = 0;
      last_obj = cur;
    }
  }
  hit_limit = true;
  return true;
}

}  // namespace

LpResult lp_minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  LpResult res;

  // Phase-1 tableau: columns [x (n) | artificials (m) | rhs].
  Eigen::MatrixXd T(m + 1, n + m + 1);
  T.setZero();
  for (int i = 0; i < m; ++i) {
    const double s = b(i) < 0 ? -1.0 : 1.0;
    T.block(i, 0, 1, n) = s * A.row(i);
    T(i, n + i) = 1.0;
    T(i, n + m) = s * b(i);
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  // Reduced costs for min sum(artificials) with artificial basis.
  for (int j = 0; j < n; ++j) T(m, j) = -T.block(0, j, m, 1).sum();
  T(m, n + m) = -T.block(0, n + m, m, 1).sum();

  const long max_iter = 2000 + 200L * (m + n);
  bool hit_limit = false;
  if (!run_simplex(T, basis, n + m, max_iter, hit_limit)) {
    res.status = LpStatus::Unbounded;  // cannot happen in phase 1
    return res;
  }
  if (hit_limit) {
    res.status = LpStatus::IterationLimit;
    return res;
  }
  if (-T(m, n + m) > kFeasTol) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Drive remaining artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int piv = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(T(i, j)) > 1e-9) {
        piv = j;
        break;
      }
    }
    if (piv < 0) continue;  // redundant row, leave the artificial at zero
    T.row(i) /= T(i, piv);
    for (int r = 0; r <= m; ++r) {
      if (r == i) continue;
      const double f = T(r, piv);
      if (f != 0.0) T.row(r) -= f * T.row(i);
    }
    basis[i] = piv;
  }

  // Phase 2: rebuild the objective row for c; bar artificial columns.
  T.row(m).setZero();
  for (int j = 0; j < n; ++j) T(m, j) = c(j);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n && c(basis[i]) != 0.0) T.row(m) -= c(basis[i]) * T.row(i);
  }
  for (int j = n; j < n + m; ++j) T(m, j) = 1.0;  // never re-enter artificials

  hit_limit = false;
  if (!run_simplex(T, basis, n, max_iter, hit_limit)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  if (hit_limit) {
    res.status = LpStatus::IterationLimit;
    return res;
  }

  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) res.x(basis[i]) = T(i, n + m);
  }
  res.value = c.dot(res.x);
  res.status = LpStatus::Optimal;
  return res;
}

double minkowski_norm(const Eigen::MatrixXd& gens, const Eigen::VectorXd& x,
                      Eigen::VectorXd* coeffs) {
  if (x.size() != gens.rows()) throw DimensionError("minkowski_norm: dimension mismatch");
  if (x.lpNorm<Eigen::Infinity>() == 0.0) {
    if (coeffs) coeffs->setZero(gens.cols());
    return 0.0;
  }
  const Eigen::VectorXd c = Eigen::VectorXd::Ones(gens.cols());
  LpResult r = lp_minimize(gens, x, c);
  if (r.status != LpStatus::Optimal) {
    throw Error("minkowski_norm: LP failed (generators do not span?)");
  }
  if (coeffs) *coeffs = r.x;
  return r.value;
}

bool in_convex_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& q,
                    double tol) {
  const int d = static_cast<int>(points.rows());
  const int k = static_cast<int>(points.cols());
  if (k == 0) return false;
  // Feasibility of points*lambda = q, 1'lambda = 1, lambda >= 0, with slack
  // tolerance folded in by minimizing the phase-1 residual directly.
  Eigen::MatrixXd A(d + 1, k);
  A.topRows(d) = points;
  A.row(d).setOnes();
  Eigen::VectorXd b(d + 1);
  b.head(d) = q;
  b(d) = 1.0;
  LpResult r = lp_minimize(A, b, Eigen::VectorXd::Zero(k));
  if (r.status == LpStatus::Optimal) {
    const double resid = (points * r.x - q).lpNorm<Eigen::Infinity>();
    return resid <= tol * 10 + 1e-12;
  }
  return false;
}

FaceMaxResult hrep_max(const Eigen::MatrixXd& normals, const Eigen::VectorXd& w,
                       const Eigen::VectorXd* face) {
  const int d = static_cast<int>(normals.rows());
  const int nn = static_cast<int>(normals.cols());
  const int neq = face ? 1 : 0;
  // Variables: x = u - v with u, v >= 0, plus one slack per inequality.
  const int rows = 2 * nn + neq;
  const int cols = 2 * d + 2 * nn;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b(rows);
  for (int i = 0; i < nn; ++i) {
    A.block(2 * i, 0, 1, d) = normals.col(i).transpose();
    A.block(2 * i, d, 1, d) = -normals.col(i).transpose();
    A(2 * i, 2 * d + 2 * i) = 1.0;
    b(2 * i) = 1.0;
    A.block(2 * i + 1, 0, 1, d) = -normals.col(i).transpose();
    A.block(2 * i + 1, d, 1, d) = normals.col(i).transpose();
    A(2 * i + 1, 2 * d + 2 * i + 1) = 1.0;
    b(2 * i + 1) = 1.0;
  }
  if (face) {
    A.block(rows - 1, 0, 1, d) = face->transpose();
    A.block(rows - 1, d, 1, d) = -face->transpose();
    b(rows - 1) = 1.0;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
  c.head(d) = -w;
  c.segment(d, d) = w;

  FaceMaxResult out;
  LpResult r = lp_minimize(A, b, c);
  if (r.status == LpStatus::Infeasible) return out;
  if (r.status != LpStatus::Optimal) {
    throw Error("hrep_max: LP did not converge");
  }
  out.feasible = true;
  out.argmax = r.x.head(d) - r.x.segment(d, d);
  out.value = w.dot(out.argmax);
  return out;
}

}  // namespace banachlab
