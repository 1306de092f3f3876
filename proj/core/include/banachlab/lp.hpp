#pragma once

#include <Eigen/Core>

namespace banachlab {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;
  double value = 0.0;
};

// Minimizes c^T x subject to A x = b, x >= 0 with a dense two-phase simplex.
// Dantzig pricing with a switch to Bland's rule after a stall, so the method
// terminates on degenerate problems as well.
LpResult lp_minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c);

// Minkowski functional of conv(gens) at x, i.e. min sum(lambda) with
// gens * lambda = x, lambda >= 0.  `gens` must contain the point -g for every
// column g (symmetric generator set), so the value is a norm.
double minkowski_norm(const Eigen::MatrixXd& gens, const Eigen::VectorXd& x,
                      Eigen::VectorXd* coeffs = nullptr);

// Whether q lies in conv(points) up to tolerance `tol` (phase-1 feasibility).
bool in_convex_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& q,
                    double tol);

struct FaceMaxResult {
  bool feasible = false;
  double value = 0.0;
  Eigen::VectorXd argmax;
};

// Maximizes w^T x over {x : |normals_i^T x| <= 1 for all i} intersected with
// the hyperplane {f^T x = 1} when `face` is non-null.  The columns of
// `normals` are the functionals of the H-representation.
FaceMaxResult hrep_max(const Eigen::MatrixXd& normals, const Eigen::VectorXd& w,
                       const Eigen::VectorXd* face = nullptr);

}  // namespace banachlab
