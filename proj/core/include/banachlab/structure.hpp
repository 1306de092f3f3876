#pragma once

#include <vector>

#include "banachlab/operators.hpp"

namespace banachlab {

Space l1_sum(const std::vector<Space>& parts);
Space linf_sum(const std::vector<Space>& parts);

// Coordinate layout of a sum space as declared (before any internal
// normalization): part k occupies [offsets[k], offsets[k] + dims[k]).
struct SumLayout {
  std::vector<int> offsets;
  std::vector<int> dims;
};
SumLayout sum_layout(const Space& sum);

Operator injection(const Space& sum, int k);   // part k -> sum, isometric
Operator projection(const Space& sum, int k);  // sum -> part k, norm <= 1

// [S 0; 0 0] on l1_sum([Y, Z]) for S on Y.  Norm-preserving, and the
// numerical range only shrinks toward the origin: V(ext) = [0,1] V(S).
Operator extend_by_zero(const Operator& S, const Space& z);

// [S 0; 0 Id] on l1_sum([Y, Z]); S must be a surjective isometry of Y.
// Throws IsometryError carrying a unit witness vector otherwise.
Operator extend_isometry(const Operator& S, const Space& z, double tol = 1e-9);

}  // namespace banachlab
