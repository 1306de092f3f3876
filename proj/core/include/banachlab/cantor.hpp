#pragma once

#include <string>
#include <vector>

#include "banachlab/operators.hpp"

namespace banachlab {

// Uniform grid {i/m} classified against the level-k Cantor iterate C_k
// (union of 2^k closed intervals of length 3^-k).  Classification is exact:
// i/m lies in C_k iff i 3^k lands in [A m, (A+1) m] for an admissible
// integer A, tested in integer arithmetic.
struct CantorGrid {
  int level = 0;  // k
  int m = 1;      // grid step 1/m
  std::vector<double> grid;       // i/m for i = 0..m
  std::vector<int> cantor_nodes;  // grid indices inside C_k
  std::vector<int> gap_nodes;     // complement
  std::vector<bool> is_cantor;    // size m+1
};

CantorGrid cantor_grid(int k, int m);

// Planted restriction space E over the Cantor nodes:
//   L2        embedded Euclidean plane (cosine/sine rows),
//   Constants constant functions (one column of ones),
//   Full      every function on the Cantor nodes,
//   Zero      the null space (X(E) is then Y, the gap-only space).
enum class EKind { L2, Constants, Full, Zero };

// Isometric-up-to-(pi/(2n))^2 embedding of the Euclidean plane into sup-norm
// coordinates: rows (cos(i pi / n), sin(i pi / n)).
struct EmbedReport {
  Eigen::MatrixXd basis;  // n x 2
  double bound = 0.0;     // relative norm defect bound (pi/(2n))^2
};
EmbedReport embed_l2_in_sup(int n);

// X(E): continuous piecewise-linear functions on the grid whose restriction
// to the Cantor nodes lies in the planted space E.  Coordinates are
// (E coefficients, values at gap nodes).
struct PLSpace {
  CantorGrid grid;
  int dim_e = 0;
  Eigen::MatrixXd e_basis;  // values of the E basis on the Cantor nodes
  Space space;       // X(E) as a sup-norm subspace over the full grid
  Space e_space;     // E over the Cantor nodes (invalid when dim_e = 0)
  Space eval_space;  // same-norm linf sum the engine evaluates blockwise
  Eigen::MatrixXd restriction;  // Phi : X -> E, restriction to Cantor nodes
  Eigen::MatrixXd lift;         // E -> gap values, affine interpolation
};

// e_rows holds the E basis as values on the Cantor nodes (full column rank).
PLSpace build_XE(const CantorGrid& g, const Eigen::MatrixXd& e_rows);
PLSpace build_XE(EKind kind, int k, int m);

// Hat function of width 1/m peaked at a gap node, zero at every other grid
// node (hence at all Cantor nodes) and outside the open interval (a, b).
// The peak is the eligible gap node closest to the interval's center, ties
// resolved toward the lower node.  Eligible means the node and both its grid
// neighbors lie strictly inside (a, b).
struct BumpResult {
  bool found = false;
  int center = -1;            // grid index of the peak
  double center_value = 0.0;  // grid coordinate of the peak
  Eigen::VectorXd values;     // on the grid; 1 at the peak, 0 elsewhere
  std::string reason;
};
BumpResult urysohn_bump(const CantorGrid& g, double a, double b);

// Gap nodes whose hat has its closed support clear of C_k (both neighbors
// are gap nodes too); the fraction of these among all gap nodes is the
// coverage statistic reported by the experiment.
std::vector<int> coverable_gap_nodes(const CantorGrid& g);

// The restriction Phi is a quotient map with an isometric affine lift:
// ||lift(c)|| = ||c||, Phi(lift(c)) = c and ||Phi|| <= 1.
struct QuotientReport {
  double max_lift_defect = 0.0;
  double phi_norm = 0.0;
  bool restriction_exact = false;
  bool passed = false;
  bool exact = true;  // the norm evaluations were certified
};
QuotientReport quotient_isometry_check(const PLSpace& pl, int samples = 64,
                                       double tol = 1e-10);

// Evaluation functionals restricted to X(E).  Every gap node's coordinate
// functional has dual norm one (hat witness from below, sup-norm bound from
// above); the report also states the fraction of all grid nodes whose
// restricted evaluation functional is an extreme point of the dual ball.
struct GapFunctionalReport {
  std::vector<double> norms;  // one per gap node
  double worst_defect = 0.0;
  int bump_witnesses = 0;     // gap nodes with a certifying hat
  double extreme_fraction = 0.0;
};
GapFunctionalReport gap_functional_norms(const PLSpace& pl);

struct ExperimentRecord {
  int m = 0;
  int dim_x = 0;
  double index_upper = 1.0;
  int lie_dim_primal = 0;
  int lie_dim_dual_model = 0;
  double bump_coverage_fraction = 0.0;
  double dual_rotation_drift = 0.0;
};

// The main example at increasing grid resolution: rotation-free primal
// space against its rotation-carrying dual model l1_sum([E*, l1(gaps)]).
// Supports the L2 and Constants kinds; for L2 the dual model must carry a
// rotation generator (dimension >= 1, drift <= 1e-9) or a CheckError is
// raised.
std::vector<ExperimentRecord> main_example_experiment(
    EKind kind, int k, const std::vector<int>& ms, int budget = 64,
    unsigned long seed = 0);

std::string experiment_csv(const std::vector<ExperimentRecord>& records);

}  // namespace banachlab
