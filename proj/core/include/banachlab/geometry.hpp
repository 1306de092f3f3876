#pragma once

#include <vector>

#include <Eigen/Core>

namespace banachlab {

// Columns of the returned matrix are the input columns together with their
// negatives, deduplicated at `tol` (max-norm).
Eigen::MatrixXd symmetrize_columns(const Eigen::MatrixXd& pts, double tol);

Eigen::MatrixXd dedup_columns(const Eigen::MatrixXd& pts, double tol);

// Removes every column contained in the convex hull of the remaining ones.
Eigen::MatrixXd hull_reduce(const Eigen::MatrixXd& pts, double tol);

// Deterministic canonical column order (lexicographic, descending).
Eigen::MatrixXd canonical_columns(Eigen::MatrixXd pts);

// Vertices of the polar {y : v^T y <= 1 for every column v}.  The input must
// be the extreme points of a symmetric polytope with 0 in its interior.
// Dimension 2 uses the angular edge walk; higher dimensions enumerate basis
// subsets and are guarded by a combinatorial budget.
Eigen::MatrixXd polar_vertices(const Eigen::MatrixXd& verts, double merge_tol);

// Vertices of {x : |n^T x| <= 1 for every column n of normals}.
Eigen::MatrixXd hpolytope_vertices(const Eigen::MatrixXd& normals,
                                   double merge_tol);

// Support function of a finite point set in the plane.
double support_2d(const std::vector<Eigen::Vector2d>& pts,
                  const Eigen::Vector2d& dir);

// Distance from p to conv({0} union [0,1]*pts) measured by the worst
// violation of support-function dominance over `ndirs` directions.
double cone_hull_violation_2d(const std::vector<Eigen::Vector2d>& pts,
                              const Eigen::Vector2d& p, int ndirs);

}  // namespace banachlab
