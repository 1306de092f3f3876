#include "banachlab/rng.hpp"

#include <cmath>

namespace banachlab {
namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

// Box-Muller on a pair of quasirandom uniforms (u shifted away from 0).
std::pair<double, double> gauss_pair(double u1, double u2) {
  const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-12)));
  return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

}  // namespace

double halton(long i, int base) {
  double f = 1.0, r = 0.0;
  long n = i + 1;
  while (n > 0) {
    f /= base;
    r += f * (n % base);
    n /= base;
  }
  return r;
}

std::vector<Eigen::VectorXd> sphere_covering(int dim, int count) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<size_t>(count));
  if (dim == 1) {
    for (int i = 0; i < count; ++i) {
      out.push_back(Eigen::VectorXd::Constant(1, i % 2 == 0 ? 1.0 : -1.0));
    }
    return out;
  }
  const int pairs = (dim + 1) / 2;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd v(dim);
    for (int p = 0; p < pairs; ++p) {
      const double u1 = halton(i, kPrimes[(2 * p) % 20]);
      const double u2 = halton(i, kPrimes[(2 * p + 1) % 20]);
      auto [g1, g2] = gauss_pair(u1, u2);
      v(2 * p) = g1;
      if (2 * p + 1 < dim) v(2 * p + 1) = g2;
    }
    const double n = v.norm();
    if (n < 1e-9) {
      v.setZero();
      v(0) = 1.0;
    } else {
      v /= n;
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Eigen::VectorXcd> sphere_covering_complex(int dim, int count) {
  const auto reals = sphere_covering(2 * dim, count);
  std::vector<Eigen::VectorXcd> out;
  out.reserve(static_cast<size_t>(count));
  for (const auto& r : reals) {
    Eigen::VectorXcd v(dim);
    for (int k = 0; k < dim; ++k) v(k) = std::complex<double>(r(2 * k), r(2 * k + 1));
    out.push_back(v / v.norm());
  }
  return out;
}

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

Eigen::MatrixXcd random_matrix_complex(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = u(rng);
      const double im = u(rng);
      m(i, j) = std::complex<double>(re, im);
    }
  }
  return m;
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = u(rng);
  return v;
}

}  // namespace banachlab
