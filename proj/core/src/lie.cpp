#include "banachlab/lie.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/SVD>

#include "banachlab/engine.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/rng.hpp"

namespace banachlab {

namespace {

using detail::Node;
using detail::NodeKind;

void require_endo(const Operator& T, const char* who) {
  if (!T.endomorphism())
    throw ConstructionError(std::string(who) + ": endomorphism needed");
}

bool complex_exact_kind(const Node& n) {
  return n.kind == NodeKind::Hilbert || n.kind == NodeKind::L1Block ||
         n.kind == NodeKind::LinfBlock;
}

// One linear condition f^T B x = 0 on vec(B), row-major.
Eigen::VectorXd pair_row(const Eigen::VectorXd& x, const Eigen::VectorXd& f) {
  const int d = static_cast<int>(x.size());
  Eigen::VectorXd r(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) r(a * d + b) = f(a) * x(b);
  return r;
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int d) {
  Eigen::MatrixXd B(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) B(a, b) = v(a * d + b);
  return B;
}

void canonical_sign(Eigen::VectorXd& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best)) + 1e-14) best = i;
  if (v(best) < 0) v = -v;
}

// Columns of the null space of the stacked constraint rows, relative
// singular-value threshold tol.
Eigen::MatrixXd null_space(const std::vector<Eigen::VectorXd>& rows, int cols,
                           double tol) {
  if (rows.empty()) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::MatrixXd C(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < C.rows(); ++i) C.row(i) = rows[static_cast<size_t>(i)];
  Eigen::BDCSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv.size() ? sv(0) * std::max(tol, 1e-14) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

// Tangent algebra of a polytope-type node: null space of the duality-pair
// system, tightened with live witness pairs until every element is certified
// by the range engine.
std::vector<Eigen::MatrixXd> polytope_lie_basis(const Node& n, double tol,
                                                int budget) {
  const int d = n.dim;
  std::vector<Eigen::VectorXd> rows;
  bool seeded = false;
  if (detail::has_finite_pairs(n)) {
    try {
      detail::NodePairs np = detail::node_pairs(n);
      const size_t cap = 20000;
      for (size_t i = 0; i < np.x.size() && rows.size() < cap; ++i)
        rows.push_back(pair_row(np.x[i], np.f[i]));
      seeded = true;
    } catch (const CapabilityError&) {
    }
  }
  if (!seeded) {
    if (d > 24)
      throw CapabilityError(
          "lie_algebra_basis: pair system too large to enumerate");
    std::vector<Eigen::VectorXd> dirs =
        sphere_covering(d, std::max(8 * d, budget));
    for (const auto& u : dirs) {
      double nu = detail::node_norm(n, u);
      if (nu < 1e-12) continue;
      Eigen::VectorXd x = u / nu;
      rows.push_back(pair_row(x, detail::norming_functional(n, x)));
    }
  }

  const int max_rounds = d * d + 4;
  Eigen::MatrixXd null;
  for (int round = 0; round < max_rounds; ++round) {
    null = null_space(rows, d * d, tol);
    if (null.cols() == 0) break;
    std::vector<Eigen::VectorXd> cuts;
    for (int j = 0; j < null.cols(); ++j) {
      Eigen::MatrixXd B = unvec(null.col(j), d);
      for (double s : {1.0, -1.0}) {
        detail::SupReResult r = detail::sup_re(n, s * B, budget);
        if (!r.exact)
          throw CapabilityError(
              "lie_algebra_basis: range evaluation not certified");
        if (r.value > tol) cuts.push_back(pair_row(r.wit_x, r.wit_f));
      }
    }
    if (cuts.empty()) break;
    rows.insert(rows.end(), cuts.begin(), cuts.end());
  }

  std::vector<Eigen::MatrixXd> out;
  for (int j = 0; j < null.cols(); ++j) {
    Eigen::VectorXd v = null.col(j);
    canonical_sign(v);
    out.push_back(unvec(v, d));
  }
  return out;
}

std::vector<Eigen::MatrixXd> node_lie_basis(const Node& n, double tol,
                                            int budget) {
  switch (n.kind) {
    case NodeKind::Hilbert: {
      std::vector<Eigen::MatrixXd> out;
      const double r = 1.0 / std::sqrt(2.0);
      for (int i = 0; i < n.dim; ++i)
        for (int j = i + 1; j < n.dim; ++j) {
          Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n.dim, n.dim);
          B(i, j) = r;
          B(j, i) = -r;
          out.push_back(B);
        }
      return out;
    }
    case NodeKind::L1Block:
    case NodeKind::LinfBlock:
      // The rotation group is the finite signed-permutation group; its
      // tangent algebra is trivial.
      return {};
    case NodeKind::VRep:
    case NodeKind::HRep:
      return polytope_lie_basis(n, tol, budget);
    case NodeKind::SumL1:
    case NodeKind::SumLinf: {
      // A generator of the sum leaves every summand invariant: any cross
      // block would push sup Re V strictly positive in one of the two
      // signs.  The algebra is the block-diagonal join of the parts.
      std::vector<Eigen::MatrixXd> out;
      for (size_t k = 0; k < n.parts.size(); ++k) {
        std::vector<Eigen::MatrixXd> part =
            node_lie_basis(n.parts[k], tol, budget);
        for (const auto& B : part) {
          Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n.dim, n.dim);
          L.block(n.offsets[k], n.offsets[k], B.rows(), B.cols()) = B;
          out.push_back(L);
        }
      }
      return out;
    }
    case NodeKind::LpGen:
      throw CapabilityError(
          "lie_algebra_basis: no exact range evaluation for general lp");
  }
  throw CapabilityError("lie_algebra_basis: unsupported space");
}

std::vector<Eigen::MatrixXcd> hilbert_complex_basis(int n) {
  std::vector<Eigen::MatrixXcd> out;
  const std::complex<double> I(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
    B(k, k) = I;
    out.push_back(B);
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
      B(j, k) = r;
      B(k, j) = -r;
      out.push_back(B);
      B.setZero();
      B(j, k) = I * r;
      B(k, j) = I * r;
      out.push_back(B);
    }
  return out;
}

}  // namespace

Ternary is_skew_hermitian(const Operator& T, double tol, int budget) {
  require_endo(T, "is_skew_hermitian");
  const Node& n = T.domain().node();
  double plus, minus;
  bool exact;
  if (T.domain().field() == Field::Real && T.is_real()) {
    detail::SupReResult a = detail::sup_re(n, T.real(), budget);
    detail::SupReResult b = detail::sup_re(n, -T.real(), budget);
    plus = a.value;
    minus = b.value;
    exact = a.exact && b.exact;
  } else {
    Eigen::MatrixXcd M = T.as_complex();
    plus = detail::complex_sup_re(n, M, budget);
    minus = detail::complex_sup_re(n, -M, budget);
    exact = complex_exact_kind(n);
  }
  if (std::max(plus, minus) > tol) return Ternary::False;
  return exact ? Ternary::True : Ternary::Unknown;
}

SemigroupReport semigroup_verify(const Operator& T,
                                 std::vector<double> rho_grid, double tol) {
  require_endo(T, "semigroup_verify");
  if (rho_grid.empty()) {
    rho_grid.reserve(201);
    for (int i = 0; i <= 200; ++i) rho_grid.push_back(-10.0 + 0.1 * i);
  }
  SemigroupReport rep;
  for (double rho : rho_grid) {
    bool reduced = false;
    Operator E = exp_operator(T, rho, &reduced);
    NormResult nr = operator_norm(E);
    rep.max_drift = std::max(rep.max_drift, std::abs(nr.value - 1.0));
    rep.exact = rep.exact && nr.exact && !reduced;
  }
  rep.isometric = rep.max_drift <= tol;
  return rep;
}

LieAlgebraReport lie_algebra_basis(const Space& s, double tol, int budget) {
  LieAlgebraReport rep;
  if (s.field() == Field::Complex) {
    const Node& n = s.node();
    if (n.kind != NodeKind::Hilbert)
      throw CapabilityError(
          "lie_algebra_basis: complex spaces supported for lp(2) only");
    for (auto& B : hilbert_complex_basis(n.dim))
      rep.basis.emplace_back(s, s, std::move(B), "lie_basis");
  } else {
    for (auto& B : node_lie_basis(s.node(), tol, budget))
      rep.basis.emplace_back(s, s, std::move(B), "lie_basis");
  }
  rep.dimension = static_cast<int>(rep.basis.size());
  for (const Operator& B : rep.basis)
    rep.residuals.push_back(semigroup_verify(B, {}, tol).max_drift);
  return rep;
}

bool is_dissipative(const Operator& T, double tol, int budget) {
  require_endo(T, "is_dissipative");
  const Node& n = T.domain().node();
  double top;
  bool exact;
  if (T.domain().field() == Field::Real && T.is_real()) {
    detail::SupReResult r = detail::sup_re(n, T.real(), budget);
    top = r.value;
    exact = r.exact;
  } else {
    top = detail::complex_sup_re(n, T.as_complex(), budget);
    exact = complex_exact_kind(n);
  }
  if (!exact)
    throw CapabilityError("is_dissipative: range evaluation not certified");
  bool structural = top <= tol;
  if (structural) {
    // Contraction-semigroup cross-check; dissipativity forces
    // ||exp(rho T)|| <= exp(rho tol) for rho > 0.
    for (double rho : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      Operator E = exp_operator(T, rho);
      NormResult nr = operator_norm(E, budget);
      if (nr.value > 1.0 + 16.0 * rho * tol + 1e-10)
        throw CheckError("is_dissipative: semigroup cross-check disagreed");
    }
  }
  return structural;
}

bool is_hermitian(const Operator& T, double tol, int budget) {
  require_endo(T, "is_hermitian");
  if (T.domain().field() != Field::Complex)
    throw CapabilityError("is_hermitian: complex space needed");
  RangeSummary rs = range_summary(T, budget);
  double worst = 0.0;
  for (const auto& z : rs.samples)
    worst = std::max(worst, std::abs(z.imag()));
  if (worst > tol) return false;
  Eigen::MatrixXcd M = T.as_complex();
  Operator iT(T.domain(), T.codomain(),
              Eigen::MatrixXcd(std::complex<double>(0.0, 1.0) * M));
  Ternary skew = is_skew_hermitian(iT, tol, budget);
  if (skew == Ternary::Unknown)
    throw CapabilityError("is_hermitian: range evaluation not certified");
  return skew == Ternary::True;
}

}  // namespace banachlab
