// Acceptance gate: one line per criterion, [PASS] or [FAIL], exit code is
// the number of failed criteria.  Tolerances are pinned here on purpose;
// loosening them is a library regression, not a test fix.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "banachlab/cantor.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/index_search.hpp"
#include "banachlab/lie.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/operators.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/space.hpp"
#include "banachlab/structure.hpp"

using namespace banachlab;

namespace {

Space r1(int n) { return lp_space(Field::Real, 1.0, n); }
Space r2(int n) { return lp_space(Field::Real, 2.0, n); }
Space rinf(int n) { return lp_space(Field::Real, lp_infinity(), n); }
Space c2(int n) { return lp_space(Field::Complex, 2.0, n); }

Space hexagon() {
  Eigen::MatrixXd v(2, 3);
  v << 1.0, 0.5, -0.5, 0.0, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0;
  return polyhedral_space(v);
}

Space square() {
  Eigen::MatrixXd v(2, 2);
  v << 1.0, 1.0, 1.0, -1.0;
  return polyhedral_space(v);
}

Space cross() {
  Eigen::MatrixXd v(2, 2);
  v << 1.0, 0.0, 0.0, 1.0;
  return polyhedral_space(v);
}

Space quad() {
  Eigen::MatrixXd v(2, 2);
  v << 1.0, -0.3, 0.2, 1.0;
  return polyhedral_space(v);
}

std::vector<Space> exact_zoo() {
  return {r1(2),     r1(3),  rinf(2), rinf(3),   r2(2),
          r2(3),     hexagon(), square(), cross(),
          l1_sum({rinf(2), r1(2)})};
}

Operator rand_op(const Space& s, std::mt19937_64& rng) {
  const int n = s.dim();
  if (s.field() == Field::Complex)
    return Operator(s, s, random_matrix_complex(rng, n, n));
  return Operator(s, s, random_matrix(rng, n, n));
}

struct Tally {
  int checks = 0;
  int bad = 0;
  std::ostringstream note;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++bad;
      if (bad <= 4) note << (bad > 1 ? "; " : "") << what;
    }
  }
  bool pass() const { return checks > 0 && bad == 0; }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

Tally criterion_1_classical_index() {
  Tally t;
  for (const Space& s : {r1(2), rinf(2)}) {
    IndexReport rep = numerical_index_estimate(s);
    t.expect(std::abs(rep.upper - 1.0) <= 1e-2,
             "sequence-space index " + fmt(rep.upper) + " != 1");
  }
  for (int n = 2; n <= 4; ++n) {
    IndexReport rep = numerical_index_estimate(r2(n));
    t.expect(rep.upper <= 1e-3,
             "real Hilbert dim " + std::to_string(n) + " index " +
                 fmt(rep.upper));
    const Eigen::MatrixXd& W = rep.witness.real();
    t.expect((W + W.transpose()).cwiseAbs().maxCoeff() <= 1e-3,
             "witness not skew at dim " + std::to_string(n));
  }
  IndexReport rep = numerical_index_estimate(c2(2));
  t.expect(std::abs(rep.upper - 0.5) <= 1e-2,
           "complex Hilbert index " + fmt(rep.upper) + " != 0.5");
  return t;
}

Tally criterion_2_exp_formula() {
  Tally t;
  double worst = 0.0;
  for (const Space& s : {r1(3), rinf(3), r2(3)}) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 100; ++trial) {
      Operator T(s, s, Eigen::MatrixXd(random_matrix(rng, 3, 3)));
      ExpFormulaReport rep = exp_formula(T);
      const double d = std::max(std::abs(rep.lhs - rep.mid),
                                std::abs(rep.lhs - rep.rhs));
      worst = std::max(worst, d);
      t.expect(d <= 1e-6, "three-way gap " + fmt(d) + " on trial " +
                              std::to_string(trial));
    }
  }
  t.note << (t.bad ? "; " : "") << "worst gap " << fmt(worst);
  return t;
}

Tally criterion_3_generator_drift() {
  Tally t;
  // Forward: every tangent-algebra element generates an isometry group.
  std::vector<Space> spaces = {r2(2), r2(3), r2(4), r2(5)};
  for (int n = 2; n <= 4; ++n) {
    spaces.push_back(r1(n));
    spaces.push_back(rinf(n));
  }
  for (int m = 1; m <= 8; ++m) spaces.push_back(l1_sum({r2(2), r1(m)}));
  int elements = 0;
  for (const Space& s : spaces) {
    LieAlgebraReport rep = lie_algebra_basis(s);
    for (const Operator& B : rep.basis) {
      ++elements;
      SemigroupReport sg = semigroup_verify(B);
      t.expect(sg.max_drift <= 1e-9,
               "basis drift " + fmt(sg.max_drift));
    }
  }
  t.expect(elements >= 20, "too few basis elements exercised");
  // Converse: operators with visible radius always drift.
  int tested = 0;
  for (const Space& s : {r1(3), rinf(3), r2(3), hexagon()}) {
    std::mt19937_64 rng(99);
    int kept = 0;
    for (int trial = 0; trial < 60 && kept < 25; ++trial) {
      Operator T = rand_op(s, rng);
      if (numerical_radius(T) <= 0.1) continue;
      ++kept;
      ++tested;
      SemigroupReport sg = semigroup_verify(T);
      t.expect(sg.max_drift > 1e-3, "non-generator drift only " +
                                        fmt(sg.max_drift));
    }
  }
  t.expect(tested == 100, "only " + std::to_string(tested) +
                              " random operators qualified");
  return t;
}

Tally criterion_4_lie_dimensions() {
  Tally t;
  for (int n = 2; n <= 5; ++n) {
    const int dim = lie_algebra_basis(r2(n)).dimension;
    t.expect(dim == n * (n - 1) / 2,
             "euclidean dim " + std::to_string(n) + " gave " +
                 std::to_string(dim));
  }
  for (int n = 2; n <= 4; ++n) {
    t.expect(lie_algebra_basis(r1(n)).dimension == 0,
             "l1 dim " + std::to_string(n) + " not rigid");
    t.expect(lie_algebra_basis(rinf(n)).dimension == 0,
             "linf dim " + std::to_string(n) + " not rigid");
  }
  for (int m = 1; m <= 8; ++m) {
    const int dim = lie_algebra_basis(l1_sum({r2(2), r1(m)})).dimension;
    t.expect(dim == 1, "sum with l1^" + std::to_string(m) + " gave " +
                           std::to_string(dim));
  }
  return t;
}

Tally criterion_5_daugavet_equivalence() {
  Tally t;
  int holds_seen = 0;
  for (const Space& s : exact_zoo()) {
    std::mt19937_64 rng(451);
    for (int trial = 0; trial < 100; ++trial) {
      Operator T = rand_op(s, rng);
      DaugavetReport rep = check_daugavet(T, 1e-8);
      t.expect(rep.holds == rep.range_criterion,
               "criterion disagreement on " + std::to_string(trial));
      holds_seen += rep.holds ? 1 : 0;
      CircleReport circle =
          daugavet_circle_check(T, {{1.0, 0.0}, {-1.0, 0.0}}, 1e-8);
      t.expect(circle.all_verified, "circle violation on trial " +
                                        std::to_string(trial));
    }
  }
  t.note << (t.bad ? "; " : "") << "equation held " << holds_seen << "/1000";
  return t;
}

Tally criterion_6_adjoint_radius() {
  Tally t;
  double worst = 0.0;
  for (const Space& s : {hexagon(), square(), cross(), quad()}) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 500; ++trial) {
      Operator T = rand_op(s, rng);
      const double gap =
          std::abs(numerical_radius(T) - numerical_radius(adjoint(T)));
      worst = std::max(worst, gap);
      t.expect(gap <= 1e-9, "radius gap " + fmt(gap));
    }
  }
  int idx = 0;
  for (const Space& s : exact_zoo()) {
    DualIndexReport rep = verify_dual_inequality(s, 2, 7, 2e-2);
    t.expect(rep.radius_ok, "radius trials failed on space " +
                                std::to_string(idx));
    t.expect(rep.dual <= rep.primal + 2e-2,
             "dual index " + fmt(rep.dual) + " above primal " +
                 fmt(rep.primal));
    ++idx;
  }
  t.note << (t.bad ? "; " : "") << "worst radius gap " << fmt(worst);
  return t;
}

Tally criterion_7_extension_suite() {
  Tally t;
  const std::vector<Space> ys = {r1(2), rinf(2), r2(2), hexagon()};
  const std::vector<Space> zs = {r1(1), rinf(2), r2(2)};
  std::mt19937_64 rng(1234);
  int count = 0;
  double worst_norm = 0.0, worst_support = -1.0;
  while (count < 1000) {
    for (const Space& y : ys) {
      for (const Space& z : zs) {
        if (count >= 1000) break;
        ++count;
        Operator S(y, y, Eigen::MatrixXd(random_matrix(rng, 2, 2)));
        Operator T = extend_by_zero(S, z);
        const double gap =
            std::abs(operator_norm(T).value - operator_norm(S).value);
        worst_norm = std::max(worst_norm, gap);
        t.expect(gap <= 1e-9, "extension norm gap " + fmt(gap));
        RangeSummary rs = range_summary(S);
        RangeSummary rt = range_summary(T);
        for (int a = 0; a < 360; ++a) {
          const double theta = a * M_PI / 180.0;
          const std::complex<double> dir = std::polar(1.0, -theta);
          double hs = 0.0, ht = -1e300;
          for (const auto& zv : rs.samples)
            hs = std::max(hs, (dir * zv).real());
          for (const auto& zv : rt.samples)
            ht = std::max(ht, (dir * zv).real());
          worst_support = std::max(worst_support, ht - hs);
          if (ht > hs + 1e-8) {
            t.expect(false, "range escaped the cone hull by " +
                                fmt(ht - hs));
            break;
          }
        }
      }
    }
  }
  // Isometric extensions preserve the norm of every vector.
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  Eigen::MatrixXd perm2(2, 2);
  perm2 << 0.0, 1.0, -1.0, 0.0;
  Eigen::MatrixXd perm3(3, 3);
  perm3.setZero();
  perm3(0, 2) = 1.0;
  perm3(1, 0) = 1.0;
  perm3(2, 1) = -1.0;
  Eigen::MatrixXd hexrot(2, 2);
  hexrot << std::cos(M_PI / 3.0), -std::sin(M_PI / 3.0),
      std::sin(M_PI / 3.0), std::cos(M_PI / 3.0);
  struct Case {
    Operator s;
    Space z;
  };
  const std::vector<Case> cases = {
      {Operator(r2(2), r2(2), rot), r1(2)},
      {Operator(r1(2), r1(2), perm2), rinf(2)},
      {Operator(rinf(3), rinf(3), perm3), r2(1)},
      {Operator(hexagon(), hexagon(), hexrot), r1(1)},
  };
  double worst_iso = 0.0;
  for (const Case& c : cases) {
    Operator T = extend_isometry(c.s, c.z);
    const Space& sum = T.domain();
    for (int trial = 0; trial < 250; ++trial) {
      Eigen::VectorXd x = random_vector(rng, sum.dim());
      const double gap = std::abs(space_norm(sum, Eigen::VectorXd(T.real() * x)) -
                                  space_norm(sum, x));
      worst_iso = std::max(worst_iso, gap);
      t.expect(gap <= 1e-10, "isometry drift " + fmt(gap));
    }
  }
  t.note << (t.bad ? "; " : "") << "worst norm gap " << fmt(worst_norm)
         << ", support slack " << fmt(worst_support) << ", isometry drift "
         << fmt(worst_iso);
  return t;
}

Tally criterion_8_sum_index_minimum() {
  Tally t;
  const std::vector<std::pair<Space, Space>> pairs = {
      {r1(2), rinf(2)},      {r2(2), r1(2)},  {r2(2), rinf(2)},
      {hexagon(), r2(2)},    {hexagon(), square()},
      {square(), cross()}};
  for (const auto& [a, b] : pairs) {
    const double ia = numerical_index_estimate(a).upper;
    const double ib = numerical_index_estimate(b).upper;
    const double isum = numerical_index_estimate(l1_sum({a, b})).upper;
    const double want = std::min(ia, ib);
    t.expect(std::abs(isum - want) <= 2e-2,
             "sum index " + fmt(isum) + " vs min " + fmt(want));
  }
  return t;
}

Tally criterion_9_cantor_fragments() {
  Tally t;
  CantorGrid g27 = cantor_grid(1, 27);
  CantorGrid g81 = cantor_grid(1, 81);

  BumpResult b = urysohn_bump(g27, 1.0 / 3.0, 2.0 / 3.0);
  t.expect(b.found && b.center == 13, "middle-third hat misplaced");
  t.expect(b.center_value == 13.0 / 27.0, "hat coordinate drifted");
  Eigen::VectorXd want = Eigen::VectorXd::Zero(28);
  want(13) = 1.0;
  t.expect(b.values.size() == 28 && (b.values - want).cwiseAbs().maxCoeff() == 0.0,
           "hat values not bit-exact");
  BumpResult whole = urysohn_bump(g27, 0.0, 1.0);
  t.expect(whole.found && whole.center == 13, "full-interval hat misplaced");
  BumpResult b81 = urysohn_bump(g81, 1.0 / 3.0, 2.0 / 3.0);
  t.expect(b81.found && b81.center == 40, "refined hat misplaced");
  t.expect(!urysohn_bump(g27, 0.30, 0.36).found, "phantom hat at m=27");
  BumpResult fine = urysohn_bump(g81, 0.30, 0.36);
  t.expect(fine.found && fine.center == 28, "refinement hat misplaced");
  t.expect(urysohn_bump(g27, 0.30, 0.34).reason ==
               "the interval contains no gap node",
           "failure reason drifted");
  for (const CantorGrid* g : {&g27, &g81}) {
    for (int i : g->gap_nodes) {
      const double tt = g->grid[static_cast<size_t>(i)];
      BumpResult h = urysohn_bump(*g, tt - 2.0 / g->m, tt + 2.0 / g->m);
      t.expect(h.found && h.center == i,
               "per-node hat failed at " + std::to_string(i));
    }
  }

  for (EKind kind : {EKind::L2, EKind::Constants}) {
    for (int m : {27, 81}) {
      PLSpace pl = build_XE(kind, 1, m);
      QuotientReport q = quotient_isometry_check(pl);
      t.expect(q.passed && q.max_lift_defect <= 1e-10 &&
                   q.phi_norm <= 1.0 + 1e-10,
               "quotient identity failed at m=" + std::to_string(m));
      GapFunctionalReport gf = gap_functional_norms(pl);
      t.expect(gf.norms.size() == pl.grid.gap_nodes.size(),
               "functional count mismatch");
      for (double n : gf.norms)
        t.expect(std::abs(n - 1.0) <= 1e-9,
                 "gap functional norm " + fmt(n));
    }
  }
  return t;
}

Tally criterion_10_sum_model(std::string& info) {
  Tally t;
  Space model = l1_sum({r2(2), r1(8)});
  LieAlgebraReport rep = lie_algebra_basis(model);
  t.expect(rep.dimension >= 1, "sum model lost its rotation");
  for (const Operator& B : rep.basis) {
    SemigroupReport sg = semigroup_verify(B);
    t.expect(sg.max_drift <= 1e-9, "rotation drift " + fmt(sg.max_drift));
  }
  t.expect(lie_algebra_basis(r1(8)).dimension == 0, "l1^8 not rigid");
  t.expect(lie_algebra_basis(rinf(4)).dimension == 0, "linf^4 not rigid");
  t.expect(lie_algebra_basis(linf_sum({rinf(2), r1(2)})).dimension == 0,
           "linf-type sum not rigid");

  // Trend report, generated but not asserted.
  std::vector<ExperimentRecord> recs =
      main_example_experiment(EKind::L2, 1, {27, 81, 243}, 48);
  info = experiment_csv(recs);
  t.expect(recs.size() == 3, "trend rows missing");
  return t;
}

Tally criterion_11_classification() {
  Tally t;
  t.expect(is_dissipative(scale(identity_operator(r2(3)), -1.0)),
           "-Id not dissipative");
  t.expect(!is_dissipative(identity_operator(r2(3))), "Id dissipative");
  std::mt19937_64 rng(31337);
  Space s = c2(3);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXcd A = random_matrix_complex(rng, 3, 3);
    Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
    Operator TH(s, s, H);
    t.expect(is_hermitian(TH, 1e-9), "hermitian misclassified");
    Operator TS(s, s, Eigen::MatrixXcd(std::complex<double>(0.0, 1.0) * H));
    t.expect(definitely(is_skew_hermitian(TS, 1e-9)),
             "skew-hermitian misclassified");
  }
  return t;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  int failures = 0;

  struct Entry {
    int id;
    const char* label;
    std::function<Tally(std::string&)> fn;
    double budget_s;  // 0 = unbounded
  };
  const std::vector<Entry> entries = {
      {1, "classical index values",
       [](std::string&) { return criterion_1_classical_index(); }, 60.0},
      {2, "exponential formula three-way agreement",
       [](std::string&) { return criterion_2_exp_formula(); }, 120.0},
      {3, "generator drift equivalence",
       [](std::string&) { return criterion_3_generator_drift(); }, 0.0},
      {4, "tangent algebra dimensions",
       [](std::string&) { return criterion_4_lie_dimensions(); }, 0.0},
      {5, "Daugavet criterion equivalence",
       [](std::string&) { return criterion_5_daugavet_equivalence(); }, 0.0},
      {6, "adjoint radius and dual index",
       [](std::string&) { return criterion_6_adjoint_radius(); }, 0.0},
      {7, "extension suite",
       [](std::string&) { return criterion_7_extension_suite(); }, 0.0},
      {8, "l1-sum index minimum",
       [](std::string&) { return criterion_8_sum_index_minimum(); }, 0.0},
      {9, "Cantor construction fragments",
       [](std::string&) { return criterion_9_cantor_fragments(); }, 60.0},
      {10, "rotation-carrying sum model and trend report",
       [](std::string& info) { return criterion_10_sum_model(info); }, 0.0},
      {11, "dissipative and hermitian classification",
       [](std::string&) { return criterion_11_classification(); }, 0.0},
  };

  for (const Entry& e : entries) {
    const auto t0 = Clock::now();
    bool pass = false;
    std::string detail;
    std::string info;
    try {
      Tally t = e.fn(info);
      pass = t.pass();
      detail = t.note.str();
      if (!pass && t.bad > 0)
        detail += " [" + std::to_string(t.bad) + "/" +
                  std::to_string(t.checks) + " checks failed]";
    } catch (const std::exception& ex) {
      pass = false;
      detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    if (e.budget_s > 0.0 && secs > e.budget_s) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over budget ") +
                fmt(e.budget_s) + "s";
    }
    std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n",
                pass ? "PASS" : "FAIL", e.id, e.label, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!info.empty()) {
      std::istringstream lines(info);
      std::string line;
      while (std::getline(lines, line))
        std::printf("    [trend] %s\n", line.c_str());
    }
    std::fflush(stdout);
    if (!pass) ++failures;
  }

  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(entries.size()) - failures, entries.size());
  return failures;
}
