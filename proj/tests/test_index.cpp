#include <cmath>

#include "banachlab/index_search.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/operators.hpp"
#include "banachlab/rng.hpp"
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

TEST_SUITE("index") {

TEST_CASE("parallelogram balls have index one, certified") {
  // Every parallelogram is linearly isometric to the square, so all three
  // certify to exactly one.
  for (const Space& s : {square(), cross(), testutil::quad()}) {
    IndexReport rep = numerical_index_estimate(s);
    CHECK(rep.exact);
    CHECK(rep.upper == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("hexagon index is one half, certified") {
  IndexReport rep = numerical_index_estimate(hexagon());
  CHECK(rep.exact);
  CHECK(rep.upper == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("classical sequence spaces have index one") {
  for (const Space& s : {r1(2), rinf(2)}) {
    IndexReport rep = numerical_index_estimate(s);
    CHECK(rep.upper == doctest::Approx(1.0).epsilon(1e-2));
  }
}

TEST_CASE("real Hilbert index vanishes with a skew witness") {
  for (int n : {2, 3, 4}) {
    IndexReport rep = numerical_index_estimate(r2(n));
    CHECK(rep.upper <= 1e-6);
    const Eigen::MatrixXd& W = rep.witness.real();
    // The minimizer is essentially skew-symmetric.
    CHECK((W + W.transpose()).cwiseAbs().maxCoeff() < 1e-3);
    CHECK(operator_norm(rep.witness).value ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("complex Hilbert index is one half") {
  IndexReport rep = numerical_index_estimate(c2(2));
  CHECK(rep.upper == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("witness certifies its own ratio") {
  for (const Space& s : {hexagon(), square(), r1(3)}) {
    IndexReport rep = numerical_index_estimate(s);
    NormResult nr = operator_norm(rep.witness);
    CHECK(nr.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(numerical_radius(rep.witness) ==
          doctest::Approx(rep.upper).epsilon(1e-9));
  }
}

TEST_CASE("the certified value lower-bounds every ratio") {
  // On spaces where the estimate is exact, no operator can beat it.
  std::mt19937_64 rng(13);
  for (const Space& s : {hexagon(), square()}) {
    IndexReport rep = numerical_index_estimate(s);
    REQUIRE(rep.exact);
    for (int trial = 0; trial < 40; ++trial) {
      Eigen::MatrixXd M = random_matrix(rng, 2, 2);
      Operator T(s, s, M);
      const double n = operator_norm(T).value;
      if (n < 1e-9) continue;
      CHECK(numerical_radius(T) >= rep.upper * n - 5e-3);
    }
  }
}

TEST_CASE("many-vertex polytopes fall back to sampling") {
  // A regular 10-gon exceeds the facet-program vertex cap, so only the
  // sampled upper estimate is available.  The witness self-certifies the
  // reported ratio because range and norm stay exact on polytopes.
  Eigen::MatrixXd v(2, 5);
  for (int i = 0; i < 5; ++i) {
    v(0, i) = std::cos(i * M_PI / 5.0);
    v(1, i) = std::sin(i * M_PI / 5.0);
  }
  IndexReport rep = numerical_index_estimate(polyhedral_space(v));
  CHECK(!rep.exact);
  CHECK(rep.upper > 0.1);
  CHECK(rep.upper < 0.6);
  CHECK(operator_norm(rep.witness).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(numerical_radius(rep.witness) ==
        doctest::Approx(rep.upper).epsilon(1e-9));
}

TEST_CASE("dual inequality verification") {
  for (const Space& s :
       {hexagon(), square(), r1(2), l1_sum({r2(2), r1(1)})}) {
    DualIndexReport rep = verify_dual_inequality(s, 2);
    CHECK(rep.radius_ok);
    CHECK(rep.max_radius_gap <= 1e-9);
    CHECK(rep.consistent);
    CHECK(rep.dual <= rep.primal + 2e-2);
  }
}

TEST_CASE("dual of the hexagon keeps the hexagonal index") {
  DualIndexReport rep = verify_dual_inequality(hexagon(), 2);
  CHECK(rep.primal == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(rep.dual == doctest::Approx(0.5).epsilon(1e-3));
}

}  // TEST_SUITE
