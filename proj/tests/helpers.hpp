#pragma once

#include <random>
#include <vector>

#include "banachlab/operators.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/space.hpp"
#include "banachlab/structure.hpp"

namespace testutil {

using namespace banachlab;

inline Space r1(int n) { return lp_space(Field::Real, 1.0, n); }
inline Space r2(int n) { return lp_space(Field::Real, 2.0, n); }
inline Space rinf(int n) { return lp_space(Field::Real, lp_infinity(), n); }
inline Space c2(int n) { return lp_space(Field::Complex, 2.0, n); }

inline Space hexagon() {
  Eigen::MatrixXd v(2, 3);
  v << 1.0, 0.5, -0.5, 0.0, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0;
  return polyhedral_space(v);
}

inline Space square() {
  Eigen::MatrixXd v(2, 2);
  v << 1.0, 1.0, 1.0, -1.0;
  return polyhedral_space(v);
}

inline Space cross() {
  Eigen::MatrixXd v(2, 2);
  v << 1.0, 0.0, 0.0, 1.0;
  return polyhedral_space(v);
}

// An irregular centrally symmetric quadrilateral.
inline Space quad() {
  Eigen::MatrixXd v(2, 2);
  v << 1.0, -0.3, 0.2, 1.0;
  return polyhedral_space(v);
}

inline Operator rand_op(const Space& s, unsigned long seed) {
  std::mt19937_64 rng(seed);
  const int n = s.dim();
  if (s.field() == Field::Complex)
    return Operator(s, s, random_matrix_complex(rng, n, n));
  return Operator(s, s, random_matrix(rng, n, n));
}

inline Eigen::VectorXd rand_vec(int dim, unsigned long seed) {
  std::mt19937_64 rng(seed);
  return random_vector(rng, dim);
}

// Spaces on which every norm and range evaluation is certified.
inline std::vector<Space> exact_zoo() {
  return {r1(2),     r1(3),  rinf(2), rinf(3),   r2(2),
          r2(3),     hexagon(), square(), cross(),
          l1_sum({rinf(2), r1(2)})};
}

}  // namespace testutil
