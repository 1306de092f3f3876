#pragma once

#include <optional>
#include <vector>

#include "banachlab/operators.hpp"

namespace banachlab {

// Three-valued answer for predicates that may be undecidable under a
// sampled evaluation: a sampled run can refute but never certify.
enum class Ternary { False, True, Unknown };

inline bool definitely(Ternary t) { return t == Ternary::True; }

// T generates a one-parameter isometry group iff sup Re V(T) and
// sup Re V(-T) both vanish.  Exact where the range engine is exact.
Ternary is_skew_hermitian(const Operator& T, double tol = 1e-9,
                          int budget = 64);

struct SemigroupReport {
  double max_drift = 0.0;  // max_rho | ||exp(rho T)|| - 1 |
  bool isometric = false;
  bool exact = true;  // norm evaluations were certified
};

// Checks || exp(rho T) || = 1 on a symmetric grid of group parameters.
// An empty grid selects the default 201 points on [-10, 10].
SemigroupReport semigroup_verify(const Operator& T,
                                 std::vector<double> rho_grid = {},
                                 double tol = 1e-9);

struct LieAlgebraReport {
  std::vector<Operator> basis;  // Frobenius-orthonormal, deterministic order
  int dimension = 0;
  std::vector<double> residuals;  // semigroup drift per basis element
};

// Basis of the tangent algebra of the rotation group: all T with
// V(T) purely imaginary.  Supported: real spaces built from lp(1),
// lp(inf), lp(2), polyhedral and sup_subspace blocks and l1/linf sums
// of those, plus complex lp(2).
LieAlgebraReport lie_algebra_basis(const Space& s, double tol = 1e-9,
                                   int budget = 64);

// sup Re V(T) <= tol, cross-checked against the contraction semigroup
// || exp(rho T) || <= 1 + tol on a positive grid.  Throws
// CapabilityError when only sampled evaluation is available.
bool is_dissipative(const Operator& T, double tol = 1e-9, int budget = 64);

// Complex spaces only: V(T) real, i.e. iT skew-hermitian.
bool is_hermitian(const Operator& T, double tol = 1e-9, int budget = 64);

}  // namespace banachlab
