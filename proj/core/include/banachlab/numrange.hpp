#pragma once

#include <complex>
#include <vector>

#include "banachlab/operators.hpp"

namespace banachlab {

struct RangeSummary {
  double radius = 0.0;
  double sup_re = 0.0;
  double inf_re = 0.0;
  std::vector<std::complex<double>> samples;
  bool exact = false;
};

// Numerical range summary over duality pairs; exact maxima on polytope-like
// and Hilbert spaces, sampled lower envelopes otherwise.
RangeSummary range_summary(const Operator& T, int budget = 64);

double numerical_radius(const Operator& T, int budget = 64);
double sup_re_range(const Operator& T, int budget = 64);

struct ExpFormulaReport {
  double lhs = 0.0;  // sup Re V(T)
  double mid = 0.0;  // lim (||I + b T|| - 1)/b
  double rhs = 0.0;  // sup_a log||exp(a T)||/a
  std::vector<double> beta_raw;        // difference quotients along b = 2^-j
  std::vector<double> beta_richardson;
  bool exact = false;
};

ExpFormulaReport exp_formula(const Operator& T, int budget = 64);

struct DaugavetReport {
  bool holds = false;            // ||I + T|| = 1 + ||T||
  double lhs = 0.0;              // ||I + T||
  double rhs = 0.0;              // 1 + ||T||
  bool range_criterion = false;  // sup Re V(T) = ||T||
  double sup_re = 0.0;
  double norm = 0.0;
  bool degenerate_zero = false;
  bool exact = false;
};

DaugavetReport check_daugavet(const Operator& T, double tol = 1e-8,
                              int budget = 64);

struct CircleInstance {
  std::complex<double> lambda;
  bool applies = false;   // lambda*T satisfies the Daugavet equation
  double dist = 0.0;      // distance of ||T|| to the sampled hull of lambda*V(T)
  bool verified = false;  // applies implies dist <= tol
};

struct CircleReport {
  std::vector<CircleInstance> instances;
  bool all_verified = true;
};

// For each unit scalar lambda with lambda*T satisfying the Daugavet equation,
// checks ||T|| against the convex hull of lambda * (range samples) by
// support-function evaluation on a direction grid.
CircleReport daugavet_circle_check(const Operator& T,
                                   const std::vector<std::complex<double>>& lambdas,
                                   double tol = 1e-8, int budget = 64);

}  // namespace banachlab
