#include <algorithm>
#include <cmath>

#include "banachlab/errors.hpp"
#include "banachlab/lie.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/structure.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace banachlab;
using testutil::c2;
using testutil::cross;
using testutil::hexagon;
using testutil::r1;
using testutil::r2;
using testutil::rinf;
using testutil::square;

namespace {

Eigen::MatrixXd m22(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

const Eigen::MatrixXd kJ = m22(0.0, -1.0, 1.0, 0.0);

// Independent drift oracle for J on the square ball: exp(rho J) is the
// rotation by rho, whose sup-norm operator norm is |cos rho| + |sin rho|.
double square_rotation_drift(const std::vector<double>& grid) {
  double worst = 0.0;
  for (double rho : grid) {
    const double n = std::abs(std::cos(rho)) + std::abs(std::sin(rho));
    worst = std::max(worst, std::abs(n - 1.0));
  }
  return worst;
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 200; ++i) g.push_back(-10.0 + 0.1 * i);
  return g;
}

}  // namespace

TEST_SUITE("lie") {

TEST_CASE("rotation algebra dimensions on Euclidean spaces") {
  for (int n = 2; n <= 5; ++n) {
    LieAlgebraReport rep = lie_algebra_basis(r2(n));
    CHECK(rep.dimension == n * (n - 1) / 2);
    CHECK(static_cast<int>(rep.basis.size()) == rep.dimension);
    for (double r : rep.residuals) CHECK(r <= 1e-9);
    for (const Operator& B : rep.basis) {
      // Generators are skew-symmetric and normalized in Frobenius norm.
      CHECK((B.real() + B.real().transpose()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(B.real().norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("rigid polytopes have trivial algebra") {
  for (const Space& s : {r1(3), rinf(3), r1(4), hexagon(), square(), cross(),
                         testutil::quad()}) {
    LieAlgebraReport rep = lie_algebra_basis(s);
    CHECK(rep.dimension == 0);
    CHECK(rep.basis.empty());
  }
}

TEST_CASE("sum spaces compose blockwise") {
  LieAlgebraReport one = lie_algebra_basis(l1_sum({r2(2), r1(3)}));
  CHECK(one.dimension == 1);
  // The single generator is the plane rotation embedded in the first block.
  const Eigen::MatrixXd& B = one.basis[0].real();
  CHECK(B.rows() == 5);
  CHECK(B.bottomRightCorner(3, 3).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(B.topRightCorner(2, 3).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(B.bottomLeftCorner(3, 2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(B(0, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)));

  CHECK(lie_algebra_basis(linf_sum({r2(2), r2(2)})).dimension == 2);
  CHECK(lie_algebra_basis(l1_sum({r1(2), rinf(2)})).dimension == 0);
}

TEST_CASE("complex Hilbert algebra is the full unitary algebra") {
  CHECK(lie_algebra_basis(c2(2)).dimension == 4);
  CHECK(lie_algebra_basis(c2(3)).dimension == 9);
}

TEST_CASE("skew generators drift within tolerance") {
  for (int n = 2; n <= 4; ++n) {
    LieAlgebraReport rep = lie_algebra_basis(r2(n));
    for (const Operator& B : rep.basis) {
      SemigroupReport sg = semigroup_verify(B);
      CHECK(sg.isometric);
      CHECK(sg.max_drift <= 1e-9);
      CHECK(definitely(is_skew_hermitian(B)));
    }
  }
}

TEST_CASE("square rotation drift matches the grid oracle") {
  Operator J(rinf(2), rinf(2), kJ);
  SemigroupReport sg = semigroup_verify(J);
  CHECK(!sg.isometric);
  // Frozen oracle value for max over the default grid of
  // |cos rho| + |sin rho| - 1.
  CHECK(sg.max_drift == doctest::Approx(0.4142100998616518).epsilon(1e-12));
  CHECK(std::abs(sg.max_drift - square_rotation_drift(default_grid())) <
        1e-12);

  // The same generator on the Euclidean plane is exactly isometric.
  SemigroupReport good = semigroup_verify(Operator(r2(2), r2(2), kJ));
  CHECK(good.isometric);
  CHECK(good.max_drift <= 1e-12);
}

TEST_CASE("custom grids are honoured") {
  Operator J(rinf(2), rinf(2), kJ);
  // At multiples of pi/2 the rotation permutes the square's vertices.
  SemigroupReport sg =
      semigroup_verify(J, {0.0, M_PI / 2.0, M_PI, -M_PI / 2.0});
  CHECK(sg.isometric);
  CHECK(sg.max_drift < 1e-12);
}

TEST_CASE("skew-hermitian ternary outcomes") {
  CHECK(is_skew_hermitian(Operator(r2(2), r2(2), kJ)) == Ternary::True);
  CHECK(is_skew_hermitian(Operator(rinf(2), rinf(2), kJ)) == Ternary::False);
  CHECK(is_skew_hermitian(identity_operator(r2(2))) == Ternary::False);
  // A generic lp space only supports sampling, which can refute but not
  // certify.
  Space lp3 = lp_space(Field::Real, 3.0, 2);
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(2, 2);
  CHECK(is_skew_hermitian(Operator(lp3, lp3, Z)) != Ternary::False);
}

TEST_CASE("dissipative predicates") {
  CHECK(is_dissipative(scale(identity_operator(r1(3)), -1.0)));
  CHECK(!is_dissipative(identity_operator(r1(3))));
  // The forward shift block on the Euclidean plane has sup Re V = 1/2.
  Operator N(r2(2), r2(2), m22(0.0, 0.0, 1.0, 0.0));
  CHECK(!is_dissipative(N));
  // -I + J has sup Re V = -1 + 0 < 0.
  Operator damped(r2(2), r2(2), Eigen::MatrixXd(kJ - Eigen::MatrixXd::Identity(2, 2)));
  CHECK(is_dissipative(damped));
}

TEST_CASE("hermitian predicates on the complex plane pair") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = -2.0;
  CHECK(is_hermitian(Operator(c2(2), c2(2), D)));
  CHECK(!is_hermitian(Operator(c2(2), c2(2),
                               Eigen::MatrixXcd(D * std::complex<double>(0.0, 1.0)))));
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2, 2);
  S(0, 1) = 1.0;
  S(1, 0) = 1.0;
  CHECK(is_hermitian(Operator(c2(2), c2(2), S)));
  CHECK_THROWS_AS(is_hermitian(Operator(r2(2), r2(2), kJ)), CapabilityError);
}

TEST_CASE("adjoint maps generators to generators") {
  Space s = l1_sum({r2(2), r1(2)});
  LieAlgebraReport rep = lie_algebra_basis(s);
  REQUIRE(rep.dimension == 1);
  for (const Operator& B : rep.basis) {
    // Generators have purely imaginary range, so the dual radius vanishes.
    CHECK(numerical_radius(adjoint(B)) <= 1e-9);
    CHECK(definitely(is_skew_hermitian(adjoint(B))));
  }
}

TEST_CASE("unsupported spaces fail loudly") {
  CHECK_THROWS_AS(lie_algebra_basis(lp_space(Field::Real, 3.0, 3)),
                  CapabilityError);
  CHECK_THROWS_AS(
      is_dissipative(identity_operator(lp_space(Field::Real, 1.5, 2))),
      CapabilityError);
}

TEST_CASE("random non-generators show drift") {
  std::mt19937_64 rng(17);
  int tested = 0;
  for (int trial = 0; trial < 60 && tested < 20; ++trial) {
    Eigen::MatrixXd M = random_matrix(rng, 2, 2);
    Operator T(rinf(2), rinf(2), M);
    if (numerical_radius(T) <= 0.1) continue;
    ++tested;
    SemigroupReport sg = semigroup_verify(T);
    CHECK(sg.max_drift > 1e-3);
  }
  CHECK(tested == 20);
}

}  // TEST_SUITE
