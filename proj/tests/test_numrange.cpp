#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "banachlab/numrange.hpp"
#include "banachlab/operators.hpp"
#include "banachlab/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace banachlab;
using testutil::c2;
using testutil::hexagon;
using testutil::r1;
using testutil::r2;
using testutil::rand_op;
using testutil::rinf;

namespace {

// Independent closed forms for sup Re V(T) on the classical spaces.
double l1_sup_re(const Eigen::MatrixXd& M) {
  double best = -1e300;
  for (int i = 0; i < M.cols(); ++i) {
    double v = M(i, i);
    for (int j = 0; j < M.rows(); ++j)
      if (j != i) v += std::abs(M(j, i));
    best = std::max(best, v);
  }
  return best;
}

double linf_sup_re(const Eigen::MatrixXd& M) {
  return l1_sup_re(M.transpose());
}

double hilbert_sup_re(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (M + M.transpose()));
  return es.eigenvalues().maxCoeff();
}

Eigen::MatrixXd m22(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

const Eigen::MatrixXd kJ = m22(0.0, -1.0, 1.0, 0.0);

}  // namespace

TEST_SUITE("numrange") {

TEST_CASE("sup Re V matches the classical closed forms") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXd M = random_matrix(rng, n, n);
      CHECK(sup_re_range(Operator(r1(n), r1(n), M)) ==
            doctest::Approx(l1_sup_re(M)).epsilon(1e-10));
      CHECK(sup_re_range(Operator(rinf(n), rinf(n), M)) ==
            doctest::Approx(linf_sup_re(M)).epsilon(1e-10));
      CHECK(sup_re_range(Operator(r2(n), r2(n), M)) ==
            doctest::Approx(hilbert_sup_re(M)).epsilon(1e-10));
    }
  }
}

TEST_CASE("hand-computed range values") {
  // The rotation generator on the square: diagonal is zero, off-column
  // weight is one, so the radius is 1 while the Hilbert radius vanishes.
  CHECK(numerical_radius(Operator(rinf(2), rinf(2), kJ)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(numerical_radius(Operator(r1(2), r1(2), kJ)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(numerical_radius(Operator(r2(2), r2(2), kJ)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Nilpotent N: v(N) = 1/2 on the Euclidean plane, 1 on l1 and linf.
  Eigen::MatrixXd N = m22(0.0, 0.0, 1.0, 0.0);
  CHECK(numerical_radius(Operator(r2(2), r2(2), N)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(numerical_radius(Operator(r1(2), r1(2), N)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // On the hexagon the rotation generator attains 1/sqrt(3): the pair
  // (vertex, adjacent edge functional) sees the tangential component.
  CHECK(sup_re_range(Operator(hexagon(), hexagon(), kJ)) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("complex Hilbert oracles") {
  // i*Id has range {i}: radius 1, real part 0.
  Eigen::MatrixXcd iI = Eigen::MatrixXcd::Identity(2, 2) *
                        std::complex<double>(0.0, 1.0);
  Operator T(c2(2), c2(2), iI);
  CHECK(numerical_radius(T) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(sup_re_range(T)) < 1e-9);

  // Complex nilpotent keeps v = 1/2.
  Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(2, 2);
  N(1, 0) = 1.0;
  CHECK(numerical_radius(Operator(c2(2), c2(2), N)) ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("summary invariants") {
  std::mt19937_64 rng(21);
  for (const Space& s : testutil::exact_zoo()) {
    Eigen::MatrixXd M = random_matrix(rng, s.dim(), s.dim());
    Operator T(s, s, M);
    RangeSummary r = range_summary(T);
    CHECK(r.sup_re >= r.inf_re - 1e-12);
    CHECK(r.radius >= std::max(std::abs(r.sup_re), std::abs(r.inf_re)) -
                          1e-9);
    CHECK(!r.samples.empty());
    for (const auto& z : r.samples) {
      CHECK(std::abs(z) <= r.radius + 1e-9);
      CHECK(z.real() <= r.sup_re + 1e-9);
      CHECK(z.real() >= r.inf_re - 1e-9);
    }
    // v(T) <= ||T|| and the identity pins both at one.
    CHECK(r.radius <= operator_norm(T).value + 1e-9);
  }
  CHECK(numerical_radius(identity_operator(hexagon())) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("radius agrees with the adjoint radius") {
  for (const Space& s : testutil::exact_zoo()) {
    for (unsigned seed = 3; seed < 9; ++seed) {
      Operator T = rand_op(s, seed);
      CHECK(std::abs(numerical_radius(T) - numerical_radius(adjoint(T))) <
            1e-9);
    }
  }
}

TEST_CASE("exponential formula three ways") {
  std::mt19937_64 rng(5);
  for (const Space& s : {r1(3), rinf(3), r2(3)}) {
    for (int trial = 0; trial < 12; ++trial) {
      Operator T(s, s, Eigen::MatrixXd(random_matrix(rng, 3, 3)));
      ExpFormulaReport rep = exp_formula(T);
      CHECK(std::abs(rep.lhs - rep.mid) < 1e-6);
      CHECK(std::abs(rep.lhs - rep.rhs) < 1e-6);
      CHECK(!rep.beta_raw.empty());
      CHECK(!rep.beta_richardson.empty());
      // The difference quotients decrease towards the limit from above.  At
      // the smallest beta the subtraction ||Id + beta T|| - 1 cancels to
      // roughly eps / beta, so allow that much slack.
      CHECK(rep.beta_raw.front() >= rep.beta_raw.back() - 1e-6);
    }
  }
}

TEST_CASE("daugavet equation cases") {
  // diag(1, 0) on l1: sup Re V = 1 = ||T||, so the equation holds.
  Operator D(r1(2), r1(2), m22(1.0, 0.0, 0.0, 0.0));
  DaugavetReport holds = check_daugavet(D);
  CHECK(holds.holds);
  CHECK(holds.range_criterion);
  CHECK(holds.lhs == doctest::Approx(holds.rhs).epsilon(1e-12));

  // The rotation generator on the Euclidean plane fails the equation.
  DaugavetReport fails = check_daugavet(Operator(r2(2), r2(2), kJ));
  CHECK(!fails.holds);
  CHECK(!fails.range_criterion);
  CHECK(fails.lhs < fails.rhs - 0.2);

  // The zero operator satisfies it degenerately.
  DaugavetReport zero = check_daugavet(
      Operator(r1(2), r1(2), Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 2))));
  CHECK(zero.holds);
  CHECK(zero.degenerate_zero);
}

TEST_CASE("daugavet equivalence with the range criterion") {
  std::mt19937_64 rng(31);
  int seen_holds = 0;
  for (const Space& s : {r1(3), rinf(3), hexagon()}) {
    for (int trial = 0; trial < 40; ++trial) {
      Eigen::MatrixXd M = random_matrix(rng, s.dim(), s.dim());
      DaugavetReport rep = check_daugavet(Operator(s, s, M));
      CHECK(rep.holds == rep.range_criterion);
      seen_holds += rep.holds ? 1 : 0;
    }
  }
  // diag matrices with a positive top entry on l1 make sure both branches
  // are exercised.
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd M = m22(1.0 + trial, 0.0, 0.0, -0.3);
    DaugavetReport rep = check_daugavet(Operator(r1(2), r1(2), M));
    CHECK(rep.holds);
    CHECK(rep.range_criterion);
    ++seen_holds;
  }
  CHECK(seen_holds >= 5);
}

TEST_CASE("circle criterion on a diagonal example") {
  // T = diag(-1, 0): -T satisfies the Daugavet equation, so ||T|| = 1 must
  // lie in the hull of -V(T).
  Operator T(r1(2), r1(2), m22(-1.0, 0.0, 0.0, 0.0));
  std::vector<std::complex<double>> lambdas = {
      {1.0, 0.0}, {-1.0, 0.0}};
  CircleReport rep = daugavet_circle_check(T, lambdas);
  CHECK(rep.all_verified);
  REQUIRE(rep.instances.size() == 2);
  CHECK(!rep.instances[0].applies);
  CHECK(rep.instances[1].applies);
  CHECK(rep.instances[1].dist <= 1e-8);
  CHECK(rep.instances[1].verified);
}

}  // TEST_SUITE
