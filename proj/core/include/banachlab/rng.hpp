#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace banachlab {

// Halton radical-inverse sequence value for index i >= 0 in the given base.
double halton(long i, int base);

// Deterministic low-discrepancy covering of the unit sphere in R^dim
// (Halton points pushed through Box-Muller, then normalized).
std::vector<Eigen::VectorXd> sphere_covering(int dim, int count);

// Same construction over C^dim.
std::vector<Eigen::VectorXcd> sphere_covering_complex(int dim, int count);

// Seeded uniform [-1,1] matrices for reproducible experiments.
Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols);
Eigen::MatrixXcd random_matrix_complex(std::mt19937_64& rng, int rows, int cols);
Eigen::VectorXd random_vector(std::mt19937_64& rng, int dim);

}  // namespace banachlab
