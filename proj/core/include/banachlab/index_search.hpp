#pragma once

#include "banachlab/operators.hpp"

namespace banachlab {

struct IndexReport {
  double upper = 1.0;     // ratio v(T)/||T|| of the best operator found
  double estimate = 1.0;  // best available estimate (== upper)
  Operator witness;       // the minimizer, scaled to norm one
  bool exact = false;     // certified by the polytope facet program
};

// Upper estimate of the numerical index inf{v(T) : ||T|| = 1} by structured
// starts plus deterministic pattern search.  On two-dimensional polyhedral
// spaces with at most eight ball vertices the value is certified exactly by
// one linear program per facet of the operator-norm ball.
IndexReport numerical_index_estimate(const Space& s, int budget = 64,
                                     unsigned long seed = 0);

struct DualIndexReport {
  double primal = 1.0;           // estimate for the space
  double dual = 1.0;             // estimate for its dual
  double slack = 0.0;            // max(0, dual - primal)
  double max_radius_gap = 0.0;   // worst |v(T) - v(T*)| over the trials
  bool radius_ok = true;         // max_radius_gap <= 1e-9
  bool consistent = true;        // radius_ok and dual <= primal + tol
};

// Checks the one-sided duality inequality: v(T) = v(T*) on random trials
// (the identity driving it), then the index of the dual space never exceeds
// the index of the space itself (up to estimate tolerance).
DualIndexReport verify_dual_inequality(const Space& s, int trials = 3,
                                       unsigned long seed = 0,
                                       double tol = 2e-2);

}  // namespace banachlab
