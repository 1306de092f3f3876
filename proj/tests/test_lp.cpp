#include <cmath>

#include "banachlab/lp.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace banachlab;

TEST_SUITE("lp") {

TEST_CASE("minimize on a hand-solved program") {
  // min x1 + x2  s.t.  x1 + 2 x2 = 4, x >= 0; vertices (4,0) and (0,2).
  Eigen::MatrixXd A(1, 2);
  A << 1.0, 2.0;
  Eigen::VectorXd b(1), c(2);
  b << 4.0;
  c << 1.0, 1.0;
  LpResult r = lp_minimize(A, b, c);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
  CHECK(std::abs(r.x(0) - 0.0) < 1e-12);
  CHECK(std::abs(r.x(1) - 2.0) < 1e-12);
}

TEST_CASE("infeasible and unbounded detection") {
  Eigen::MatrixXd A(1, 2);
  Eigen::VectorXd b(1), c(2);

  A << 1.0, 1.0;
  b << -1.0;
  c << 1.0, 1.0;
  CHECK(lp_minimize(A, b, c).status == LpStatus::Infeasible);

  A << 0.0, 1.0;
  b << 0.0;
  c << -1.0, 0.0;
  CHECK(lp_minimize(A, b, c).status == LpStatus::Unbounded);
}

TEST_CASE("minkowski norm of the square gauge") {
  Eigen::MatrixXd gens(2, 4);
  gens << 1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0, 1.0;
  Eigen::VectorXd x(2);
  x << 2.0, 3.0;
  CHECK(std::abs(minkowski_norm(gens, x) - 3.0) < 1e-10);

  x << 1.0, 0.0;
  Eigen::VectorXd lambda;
  CHECK(std::abs(minkowski_norm(gens, x, &lambda) - 1.0) < 1e-10);
  CHECK(std::abs((gens * lambda - x).cwiseAbs().maxCoeff()) < 1e-10);
  CHECK(std::abs(lambda.sum() - 1.0) < 1e-10);

  x << 0.0, 0.0;
  CHECK(std::abs(minkowski_norm(gens, x)) < 1e-12);
}

TEST_CASE("minkowski norm axioms on random points") {
  Eigen::MatrixXd gens(2, 6);
  gens << 1.0, 0.3, -0.7, -1.0, -0.3, 0.7,
          0.1, 1.0,  0.8, -0.1, -1.0, -0.8;
  for (unsigned seed = 0; seed < 20; ++seed) {
    Eigen::VectorXd u = testutil::rand_vec(2, seed);
    Eigen::VectorXd v = testutil::rand_vec(2, seed + 100);
    const double nu = minkowski_norm(gens, u);
    const double nv = minkowski_norm(gens, v);
    CHECK(minkowski_norm(gens, Eigen::VectorXd(u + v)) <= nu + nv + 1e-9);
    CHECK(std::abs(minkowski_norm(gens, Eigen::VectorXd(-2.5 * u)) - 2.5 * nu) <
          1e-9);
  }
}

TEST_CASE("hull membership") {
  Eigen::MatrixXd pts(2, 4);
  pts << 1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0, 1.0;
  Eigen::VectorXd q(2);
  q << 0.3, 0.3;
  CHECK(in_convex_hull(pts, q, 1e-9));
  q << 1.0, 1.0;
  CHECK(in_convex_hull(pts, q, 1e-9));
  q << 1.2, 0.0;
  CHECK(!in_convex_hull(pts, q, 1e-9));
}

TEST_CASE("face maximization over the cube") {
  Eigen::MatrixXd normals = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd w(2);
  w << 1.0, 2.0;
  FaceMaxResult free = hrep_max(normals, w);
  REQUIRE(free.feasible);
  CHECK(std::abs(free.value - 3.0) < 1e-10);

  Eigen::VectorXd face(2);
  face << 1.0, 0.0;
  FaceMaxResult on = hrep_max(normals, w, &face);
  REQUIRE(on.feasible);
  CHECK(std::abs(on.value - 3.0) < 1e-10);
  CHECK(std::abs(on.argmax(0) - 1.0) < 1e-10);

  face << 0.2, 0.0;  // needs x1 = 5, outside the ball
  CHECK(!hrep_max(normals, w, &face).feasible);
}

}  // TEST_SUITE
