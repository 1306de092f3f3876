#include "banachlab/index_search.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "banachlab/engine.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/lp.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/rng.hpp"

namespace banachlab {

namespace {

using detail::Node;
using detail::NodeKind;

constexpr double kBig = std::numeric_limits<double>::infinity();
constexpr double kImprove = 1e-12;

// ---------------------------------------------------------------------------
// Real search

double real_ratio(const Node& n, const Eigen::MatrixXd& T, int budget) {
  double norm = detail::op_norm(n, n, T, budget).value;
  if (norm < 1e-9) return kBig;
  double v = std::max(detail::sup_re(n, T, budget).value,
                      detail::sup_re(n, -T, budget).value);
  return v / norm;
}

std::vector<Eigen::MatrixXd> real_starts(const Space& s, int budget,
                                         unsigned long seed);

// Block-diagonal lifts of part witnesses keep both v and the operator norm,
// so a sum inherits every part's ratio.
void lift_part_starts(const Space& s, int budget, unsigned long seed,
                      std::vector<Eigen::MatrixXd>& out) {
  const auto* sd = std::get_if<SumDesc>(&s.desc());
  if (!sd) return;
  int at = 0;
  for (const Space& part : sd->parts) {
    IndexReport pr =
        numerical_index_estimate(part, std::max(16, budget / 2), seed);
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(s.dim(), s.dim());
    L.block(at, at, part.dim(), part.dim()) = pr.witness.real();
    out.push_back(L);
    at += part.dim();
  }
}

std::vector<Eigen::MatrixXd> real_starts(const Space& s, int budget,
                                         unsigned long seed) {
  const int n = s.dim();
  std::vector<Eigen::MatrixXd> out;
  out.push_back(Eigen::MatrixXd::Identity(n, n));
  int coord = 0;
  for (int i = 0; i < n && coord < 40; ++i)
    for (int j = i + 1; j < n && coord < 40; ++j, ++coord) {
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
      J(i, j) = 1.0;
      J(j, i) = -1.0;
      out.push_back(J);
    }
  coord = 0;
  for (int i = 0; i < n && coord < 40; ++i)
    for (int j = 0; j < n && coord < 40; ++j) {
      if (i == j) continue;
      ++coord;
      Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n, n);
      N(i, j) = 1.0;
      out.push_back(N);
    }
  if (n > 1) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);  // signed cycle
    for (int i = 0; i + 1 < n; ++i) C(i + 1, i) = 1.0;
    C(0, n - 1) = -1.0;
    out.push_back(C);
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);  // signed reversal
    for (int i = 0; i < n; ++i) R(i, n - 1 - i) = (i % 2 ? -1.0 : 1.0);
    out.push_back(R);
  }
  lift_part_starts(s, budget, seed, out);
  std::mt19937_64 rng(seed);
  const int randoms = std::max(3, budget / 16);
  for (int r = 0; r < randoms; ++r) out.push_back(random_matrix(rng, n, n));
  return out;
}

Eigen::MatrixXd pattern_search_real(const Node& node,
                                    const Eigen::MatrixXd& start, int budget,
                                    double* best_ratio) {
  Eigen::MatrixXd best = start;
  double r0 = real_ratio(node, best, budget);
  const int n = static_cast<int>(start.rows());
  double step = 0.5;
  for (int shrink = 0; shrink < 40; ++shrink) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (double sg : {1.0, -1.0}) {
            Eigen::MatrixXd cand = best;
            cand(a, b) += sg * step;
            double r = real_ratio(node, cand, budget);
            if (r < r0 - kImprove) {
              r0 = r;
              best = cand;
              improved = true;
            }
          }
    }
    step *= 0.5;
    if (r0 <= 1e-15) break;
  }
  *best_ratio = r0;
  return best;
}

Eigen::MatrixXd direction_search_real(const Node& node,
                                      const Eigen::MatrixXd& start, int budget,
                                      unsigned long seed, double* best_ratio) {
  Eigen::MatrixXd best = start;
  double r0 = real_ratio(node, best, budget);
  const int n = static_cast<int>(start.rows());
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  double step = 0.5;
  for (int shrink = 0; shrink < 40; ++shrink) {
    bool improved = false;
    for (int d = 0; d < 12; ++d) {
      Eigen::MatrixXd dir = random_matrix(rng, n, n);
      dir /= dir.norm();
      for (double sg : {1.0, -1.0}) {
        Eigen::MatrixXd cand = best + sg * step * dir;
        double r = real_ratio(node, cand, budget);
        if (r < r0 - kImprove) {
          r0 = r;
          best = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (r0 <= 1e-15) break;
  }
  *best_ratio = r0;
  return best;
}

// ---------------------------------------------------------------------------
// Exact mode: two-dimensional polytope balls.  Both v(T) and ||T|| are maxima
// of finitely many linear functionals of T, so fixing the facet of the norm
// ball that attains ||T|| = 1 turns the index into one LP per facet.

struct LinForm {
  Eigen::VectorXd r;  // r . vec(T), row-major
};

LinForm form_of(const Eigen::VectorXd& f, const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size());
  LinForm lf;
  lf.r.resize(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) lf.r(a * d + b) = f(a) * x(b);
  return lf;
}

bool exact_eligible(const Node& n) {
  // V holds the full symmetric vertex set.
  return n.kind == NodeKind::VRep && n.dim <= 2 && n.V.cols() <= 8;
}

bool exact_polytope_index(const Node& n, double* value, Eigen::MatrixXd* wit) {
  const int d = n.dim;
  detail::NodePairs np = detail::node_pairs(n);
  std::vector<LinForm> a;  // v(T) = max |a_i(T)|
  for (size_t i = 0; i < np.x.size(); ++i) a.push_back(form_of(np.f[i], np.x[i]));
  std::vector<LinForm> bfs;  // ||T|| = max b_j(T)
  Node dual = detail::dual_node(n);
  for (const auto& x : detail::node_extreme_points(n))
    for (const auto& w : detail::node_extreme_points(dual))
      bfs.push_back(form_of(w, x));
  if (a.empty() || bfs.empty()) return false;

  const int nt = d * d;
  const int P = static_cast<int>(a.size());
  const int B = static_cast<int>(bfs.size());
  // Columns: t+ (nt), t- (nt), u, slacks for 2P pair rows and B ball rows.
  const int rows = 2 * P + B + 1;
  const int cols = 2 * nt + 1 + 2 * P + B;
  double best = kBig;
  Eigen::VectorXd best_t;
  for (int jstar = 0; jstar < B; ++jstar) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
    c(2 * nt) = 1.0;
    int row = 0;
    for (int i = 0; i < P; ++i)
      for (double sg : {1.0, -1.0}) {
        A.row(row).segment(0, nt) = sg * a[i].r;
        A.row(row).segment(nt, nt) = -sg * a[i].r;
        A(row, 2 * nt) = -1.0;
        A(row, 2 * nt + 1 + row) = 1.0;
        b(row) = 0.0;
        ++row;
      }
    for (int j = 0; j < B; ++j) {
      A.row(row).segment(0, nt) = bfs[j].r;
      A.row(row).segment(nt, nt) = -bfs[j].r;
      A(row, 2 * nt + 1 + row) = 1.0;
      b(row) = 1.0;
      ++row;
    }
    A.row(row).segment(0, nt) = bfs[jstar].r;
    A.row(row).segment(nt, nt) = -bfs[jstar].r;
    b(row) = 1.0;
    LpResult res = lp_minimize(A, b, c);
    if (res.status != LpStatus::Optimal) continue;
    if (res.value < best) {
      best = res.value;
      best_t = res.x.segment(0, nt) - res.x.segment(nt, nt);
    }
  }
  if (!std::isfinite(best)) return false;
  *value = std::max(best, 0.0);
  Eigen::MatrixXd T(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) T(i, j) = best_t(i * d + j);
  *wit = T;
  return true;
}

// ---------------------------------------------------------------------------
// Complex search (lp-type nodes)

double cheap_complex_radius(const Node& n, const Eigen::MatrixXcd& T,
                            int budget) {
  const std::complex<double> I(0.0, 1.0);
  double best = 0.0;
  for (int k = 0; k < 512; ++k) {
    double th = 2.0 * M_PI * k / 512.0;
    best = std::max(best,
                    detail::complex_sup_re(n, std::exp(I * th) * T, budget));
  }
  return best;
}

double complex_ratio(const Node& n, const Eigen::MatrixXcd& T, int budget) {
  double norm = detail::complex_op_norm(n, n, T, budget).value;
  if (norm < 1e-9) return kBig;
  return cheap_complex_radius(n, T, budget) / norm;
}

std::vector<Eigen::MatrixXcd> complex_starts(int n, int budget,
                                             unsigned long seed) {
  const std::complex<double> I(0.0, 1.0);
  std::vector<Eigen::MatrixXcd> out;
  out.push_back(Eigen::MatrixXcd::Identity(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(n, n);
      N(i, j) = 1.0;
      out.push_back(N);
    }
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) D(i, i) = (i % 2 ? -1.0 : 1.0);
  out.push_back(D);
  out.push_back(I * D);
  std::mt19937_64 rng(seed);
  const int randoms = std::max(3, budget / 16);
  for (int r = 0; r < randoms; ++r)
    out.push_back(random_matrix_complex(rng, n, n));
  return out;
}

Eigen::MatrixXcd pattern_search_complex(const Node& node,
                                        const Eigen::MatrixXcd& start,
                                        int budget, double* best_ratio) {
  Eigen::MatrixXcd best = start;
  double r0 = complex_ratio(node, best, budget);
  const int n = static_cast<int>(start.rows());
  const std::complex<double> I(0.0, 1.0);
  double step = 0.5;
  for (int shrink = 0; shrink < 30; ++shrink) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (const std::complex<double>& dir :
               {std::complex<double>(1, 0), std::complex<double>(-1, 0),
                I, -I}) {
            Eigen::MatrixXcd cand = best;
            cand(a, b) += dir * step;
            double r = complex_ratio(node, cand, budget);
            if (r < r0 - kImprove) {
              r0 = r;
              best = cand;
              improved = true;
            }
          }
    }
    step *= 0.5;
    if (r0 <= 1e-15) break;
  }
  *best_ratio = r0;
  return best;
}

IndexReport complex_index_estimate(const Space& s, int budget,
                                   unsigned long seed) {
  const Node& node = s.node();
  const int n = s.dim();
  double best_r = kBig;
  Eigen::MatrixXcd best;
  for (const auto& st : complex_starts(n, budget, seed)) {
    double r = complex_ratio(node, st, budget);
    if (r < best_r - kImprove) {
      best_r = r;
      best = st;
    }
  }
  if (!best.size()) best = Eigen::MatrixXcd::Identity(n, n);
  if (2 * n * n <= 100) {
    double r = best_r;
    Eigen::MatrixXcd refined = pattern_search_complex(node, best, budget, &r);
    if (r < best_r) {
      best_r = r;
      best = refined;
    }
  }
  bool converged = false;
  double vr = detail::complex_radius(node, best, budget, &converged);
  double norm = detail::complex_op_norm(node, node, best, budget).value;
  IndexReport rep;
  rep.upper = norm > 0 ? vr / norm : 1.0;
  rep.estimate = rep.upper;
  rep.witness = Operator(s, s, Eigen::MatrixXcd(best / norm), "index_witness");
  rep.exact = false;
  return rep;
}

}  // namespace

IndexReport numerical_index_estimate(const Space& s, int budget,
                                     unsigned long seed) {
  if (!s.valid()) throw ConstructionError("numerical_index_estimate: no space");
  if (s.field() == Field::Complex) return complex_index_estimate(s, budget, seed);

  const Node& node = s.node();
  const int n = s.dim();

  if (exact_eligible(node)) {
    double value = 0.0;
    Eigen::MatrixXd T;
    if (exact_polytope_index(node, &value, &T)) {
      double norm = detail::op_norm(node, node, T, budget).value;
      double check = real_ratio(node, T, budget);
      if (norm > 1e-12 && std::abs(check - value) <= 1e-6) {
        IndexReport rep;
        rep.upper = value;
        rep.estimate = value;
        rep.witness = Operator(s, s, Eigen::MatrixXd(T / norm), "index_witness");
        rep.exact = true;
        return rep;
      }
    }
  }

  double best_r = kBig;
  Eigen::MatrixXd best;
  for (const auto& st : real_starts(s, budget, seed)) {
    double r = real_ratio(node, st, budget);
    if (r < best_r - kImprove) {
      best_r = r;
      best = st;
    }
  }
  if (!best.size()) best = Eigen::MatrixXd::Identity(n, n);
  double refined_r = best_r;
  Eigen::MatrixXd refined =
      n * n <= 100
          ? pattern_search_real(node, best, budget, &refined_r)
          : direction_search_real(node, best, budget, seed, &refined_r);
  if (refined_r < best_r) {
    best_r = refined_r;
    best = refined;
  }

  detail::OpNormResult norm = detail::op_norm(node, node, best, budget);
  detail::SupReResult vp = detail::sup_re(node, best, budget);
  detail::SupReResult vm = detail::sup_re(node, -best, budget);
  IndexReport rep;
  rep.upper = norm.value > 0 ? std::max(vp.value, vm.value) / norm.value : 1.0;
  rep.estimate = rep.upper;
  rep.witness =
      Operator(s, s, Eigen::MatrixXd(best / norm.value), "index_witness");
  rep.exact = false;
  return rep;
}

DualIndexReport verify_dual_inequality(const Space& s, int trials,
                                       unsigned long seed, double tol) {
  Space d = dual_space(s);
  DualIndexReport rep;

  // The mechanism behind the inequality: the radius is invariant under the
  // adjoint, so every operator on the dual coming from the primal keeps its
  // ratio.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int n = s.dim();
  for (int t = 0; t < std::max(1, trials); ++t) {
    Operator T = s.field() == Field::Complex
                     ? Operator(s, s, random_matrix_complex(rng, n, n))
                     : Operator(s, s, random_matrix(rng, n, n));
    const double gap =
        std::abs(numerical_radius(T) - numerical_radius(adjoint(T)));
    rep.max_radius_gap = std::max(rep.max_radius_gap, gap);
  }
  rep.radius_ok = rep.max_radius_gap <= 1e-9;

  rep.primal = kBig;
  rep.dual = kBig;
  for (int t = 0; t < std::max(1, trials); ++t) {
    rep.primal =
        std::min(rep.primal, numerical_index_estimate(s, 64, seed + t).upper);
    rep.dual = std::min(rep.dual,
                        numerical_index_estimate(d, 64, seed + 1000 + t).upper);
  }
  rep.slack = std::max(0.0, rep.dual - rep.primal);
  rep.consistent = rep.radius_ok && rep.dual <= rep.primal + tol;
  return rep;
}

}  // namespace banachlab
