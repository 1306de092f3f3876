#include "banachlab/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "banachlab/engine.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/index_search.hpp"
#include "banachlab/lie.hpp"
#include "banachlab/lp.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/structure.hpp"

namespace banachlab {

namespace {

// Left endpoints of the 2^k closed intervals of C_k, scaled by 3^k: the
// middle-third split sends a start s at level j to 3s and 3s + 2.
std::vector<std::int64_t> interval_starts(int k) {
  std::vector<std::int64_t> starts{0};
  for (int j = 0; j < k; ++j) {
    std::vector<std::int64_t> next;
    next.reserve(2 * starts.size());
    for (std::int64_t s : starts) {
      next.push_back(3 * s);
      next.push_back(3 * s + 2);
    }
    starts = std::move(next);
  }
  return starts;
}

}  // namespace

CantorGrid cantor_grid(int k, int m) {
  if (k < 0 || k > 20) throw ConstructionError("cantor_grid: level out of range");
  if (m < 1 || m > 1000000)
    throw ConstructionError("cantor_grid: grid size out of range");
  CantorGrid g;
  g.level = k;
  g.m = m;
  std::int64_t p3 = 1;
  for (int j = 0; j < k; ++j) p3 *= 3;
  if (m % p3 != 0)
    throw ConstructionError("cantor_grid: m must be a multiple of 3^k");
  std::vector<std::int64_t> starts = interval_starts(k);
  g.grid.resize(m + 1);
  g.is_cantor.assign(m + 1, false);
  for (int i = 0; i <= m; ++i) {
    g.grid[i] = static_cast<double>(i) / m;
    const std::int64_t lhs = static_cast<std::int64_t>(i) * p3;
    // i/m is in [A/3^k, (A+1)/3^k] iff A m <= i 3^k <= (A+1) m.
    auto it = std::upper_bound(starts.begin(), starts.end(),
                               lhs / static_cast<std::int64_t>(m));
    for (int back = 0; back < 2 && it != starts.begin(); ++back) {
      --it;
      const std::int64_t A = *it;
      if (A * m <= lhs && lhs <= (A + 1) * m) {
        g.is_cantor[i] = true;
        break;
      }
    }
    if (g.is_cantor[i])
      g.cantor_nodes.push_back(i);
    else
      g.gap_nodes.push_back(i);
  }
  return g;
}

EmbedReport embed_l2_in_sup(int n) {
  if (n < 2) throw ConstructionError("embed_l2_in_sup: need at least two rows");
  EmbedReport rep;
  rep.basis.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    const double th = M_PI * i / n;
    rep.basis(i, 0) = std::cos(th);
    rep.basis(i, 1) = std::sin(th);
  }
  const double half = M_PI / (2.0 * n);
  rep.bound = half * half;
  return rep;
}

namespace {

Eigen::MatrixXd e_basis_rows(EKind kind, int n_cantor) {
  switch (kind) {
    case EKind::L2:
      return embed_l2_in_sup(n_cantor).basis;
    case EKind::Constants:
      return Eigen::MatrixXd::Ones(n_cantor, 1);
    case EKind::Full:
      return Eigen::MatrixXd::Identity(n_cantor, n_cantor);
    case EKind::Zero:
      return Eigen::MatrixXd(n_cantor, 0);
  }
  throw ConstructionError("unknown restriction kind");
}

}  // namespace

PLSpace build_XE(const CantorGrid& g, const Eigen::MatrixXd& e_rows) {
  PLSpace pl;
  pl.grid = g;
  const int nc = static_cast<int>(pl.grid.cantor_nodes.size());
  const int ng = static_cast<int>(pl.grid.gap_nodes.size());
  const int m = pl.grid.m;
  if (e_rows.rows() != nc)
    throw ConstructionError("build_XE: basis rows must match Cantor nodes");
  const int de = static_cast<int>(e_rows.cols());
  if (de + ng == 0) throw ConstructionError("build_XE: empty space");
  pl.dim_e = de;
  pl.e_basis = e_rows;

  std::vector<double> cpos;
  cpos.reserve(nc);
  for (int idx : pl.grid.cantor_nodes) cpos.push_back(pl.grid.grid[idx]);
  if (de > 0) pl.e_space = sup_subspace(cpos, e_rows);

  // Full-grid basis: Cantor row t carries the E functions, gap row t its own
  // coordinate.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m + 1, de + ng);
  {
    int c = 0, gp = 0;
    for (int i = 0; i <= m; ++i) {
      if (pl.grid.is_cantor[i]) {
        basis.row(i).head(de) = e_rows.row(c++);
      } else {
        basis(i, de + gp) = 1.0;
        ++gp;
      }
    }
  }
  pl.space = sup_subspace(
      std::vector<double>(pl.grid.grid.begin(), pl.grid.grid.end()), basis);

  Space gap_space =
      ng > 0 ? lp_space(Field::Real, lp_infinity(), ng) : Space();
  if (de > 0 && ng > 0)
    pl.eval_space = linf_sum({pl.e_space, gap_space});
  else if (de > 0)
    pl.eval_space = pl.e_space;
  else
    pl.eval_space = gap_space;

  pl.restriction = Eigen::MatrixXd::Zero(de, de + ng);
  pl.restriction.leftCols(de).setIdentity();

  // Affine interpolation across each gap run; the grid ends are always
  // Cantor nodes, so both neighbors exist.
  pl.lift = Eigen::MatrixXd::Zero(ng, de);
  for (int j = 0; j < ng; ++j) {
    const int i = pl.grid.gap_nodes[j];
    int l = i - 1, r = i + 1;
    while (!pl.grid.is_cantor[l]) --l;
    while (!pl.grid.is_cantor[r]) ++r;
    const double wl = static_cast<double>(r - i) / (r - l);
    const double wr = static_cast<double>(i - l) / (r - l);
    const int lc = static_cast<int>(std::lower_bound(pl.grid.cantor_nodes.begin(),
                                                     pl.grid.cantor_nodes.end(), l) -
                                    pl.grid.cantor_nodes.begin());
    const int rc = static_cast<int>(std::lower_bound(pl.grid.cantor_nodes.begin(),
                                                     pl.grid.cantor_nodes.end(), r) -
                                    pl.grid.cantor_nodes.begin());
    pl.lift.row(j) = wl * e_rows.row(lc) + wr * e_rows.row(rc);
  }
  return pl;
}

PLSpace build_XE(EKind kind, int k, int m) {
  CantorGrid g = cantor_grid(k, m);
  return build_XE(g, e_basis_rows(kind, static_cast<int>(g.cantor_nodes.size())));
}

std::vector<int> coverable_gap_nodes(const CantorGrid& g) {
  std::vector<int> out;
  for (int i : g.gap_nodes) {
    if (i - 1 < 0 || i + 1 > g.m) continue;
    if (!g.is_cantor[i - 1] && !g.is_cantor[i + 1]) out.push_back(i);
  }
  return out;
}

BumpResult urysohn_bump(const CantorGrid& g, double a, double b) {
  BumpResult res;
  if (!(a < b)) {
    res.reason = "empty interval";
    return res;
  }
  const double mid = 0.5 * (a + b);
  bool gap_in_u = false;
  int best = -1;
  double best_dist = 0.0;
  for (int i : g.gap_nodes) {
    const double t = g.grid[i];
    if (a < t && t < b) gap_in_u = true;
    if (i - 1 < 0 || i + 1 > g.m) continue;
    // The hat vanishes outside (t - 1/m, t + 1/m); both neighbors must sit
    // strictly inside the open interval.
    if (!(a < g.grid[i - 1] && g.grid[i + 1] < b)) continue;
    const double dist = std::abs(t - mid);
    if (best < 0 || dist < best_dist - 1e-15) {
      best = i;
      best_dist = dist;
    }
  }
  if (best < 0) {
    res.reason = gap_in_u ? "no gap node fits a full hat inside the interval"
                          : "the interval contains no gap node";
    return res;
  }
  res.found = true;
  res.center = best;
  res.center_value = g.grid[best];
  res.values = Eigen::VectorXd::Zero(g.m + 1);
  res.values(best) = 1.0;
  return res;
}

QuotientReport quotient_isometry_check(const PLSpace& pl, int samples,
                                       double tol) {
  QuotientReport rep;
  const int de = pl.dim_e;
  if (de == 0) {
    // X(0) = Y: the quotient onto the null space is trivial.
    rep.restriction_exact = true;
    rep.passed = true;
    return rep;
  }
  std::vector<Eigen::VectorXd> cs = sphere_covering(de, std::max(samples, 4));
  for (int i = 0; i < de; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(de);
    e(i) = 1.0;
    cs.push_back(e);
  }
  const int ng = static_cast<int>(pl.lift.rows());
  bool exact = true;
  for (auto& c : cs) {
    // Open-ball sample in the E norm.
    const double en = space_norm(pl.e_space, c);
    if (en > 0) c *= 0.9 / en;
    Eigen::VectorXd fx(de + ng);
    fx.head(de) = c;
    fx.tail(ng) = pl.lift * c;
    const double nx = space_norm(pl.space, fx);
    const double ne = space_norm(pl.e_space, c);
    rep.max_lift_defect = std::max(rep.max_lift_defect, std::abs(nx - ne));
    Eigen::VectorXd back = pl.restriction * fx;
    if ((back - c).cwiseAbs().maxCoeff() != 0.0) exact = false;
  }
  rep.restriction_exact = exact;
  Operator phi(pl.space, pl.e_space, pl.restriction, "quotient");
  NormResult nr = operator_norm(phi);
  rep.phi_norm = nr.value;
  rep.exact = nr.exact;
  rep.passed = rep.restriction_exact && rep.max_lift_defect <= tol &&
               rep.phi_norm <= 1.0 + tol;
  return rep;
}

GapFunctionalReport gap_functional_norms(const PLSpace& pl) {
  GapFunctionalReport rep;
  const int de = pl.dim_e;
  const int ng = static_cast<int>(pl.lift.rows());
  const detail::Node& node = pl.space.node();
  for (int j = 0; j < ng; ++j) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(de + ng);
    f(de + j) = 1.0;
    const double nrm = detail::node_dual_norm(node, f);
    rep.norms.push_back(nrm);
    rep.worst_defect = std::max(rep.worst_defect, std::abs(nrm - 1.0));
    // Lower-bound witness: a hat peaked at the node evaluates to its norm.
    const int i = pl.grid.gap_nodes[j];
    const double t = pl.grid.grid[i];
    const double w = 2.0 / pl.grid.m;
    BumpResult bump = urysohn_bump(pl.grid, t - w, t + w);
    if (bump.found && bump.center == i) ++rep.bump_witnesses;
  }
  // Dual ball = conv(+- basis rows); a node functional is extreme iff it is
  // not a convex combination of the remaining generators.
  const Eigen::MatrixXd& H = node.H.size() ? node.H : node.V;
  if (H.size()) {
    const int cols = static_cast<int>(H.cols());
    const int n_nodes = pl.grid.m + 1;
    int extreme = 0;
    int c_row = 0, g_row = 0;
    for (int i = 0; i < n_nodes; ++i) {
      Eigen::VectorXd f = Eigen::VectorXd::Zero(de + ng);
      if (pl.grid.is_cantor[i]) {
        f.head(de) = pl.e_basis.row(c_row++);
      } else {
        f(de + g_row++) = 1.0;
      }
      if (f.lpNorm<Eigen::Infinity>() == 0.0) continue;  // zero functional
      Eigen::MatrixXd others(de + ng, 0);
      for (int c = 0; c < cols; ++c) {
        const Eigen::VectorXd h = H.col(c);
        if ((h - f).lpNorm<Eigen::Infinity>() < 1e-12 ||
            (h + f).lpNorm<Eigen::Infinity>() < 1e-12)
          continue;
        others.conservativeResize(Eigen::NoChange, others.cols() + 2);
        others.col(others.cols() - 2) = h;
        others.col(others.cols() - 1) = -h;
      }
      if (others.cols() == 0 || !in_convex_hull(others, f, 1e-9)) ++extreme;
    }
    rep.extreme_fraction = static_cast<double>(extreme) / n_nodes;
  }
  return rep;
}

std::vector<ExperimentRecord> main_example_experiment(
    EKind kind, int k, const std::vector<int>& ms, int budget,
    unsigned long seed) {
  if (kind != EKind::L2 && kind != EKind::Constants)
    throw UsageError("experiment supports the l2 and constants kinds");
  std::vector<ExperimentRecord> out;
  for (int m : ms) {
    PLSpace pl = build_XE(kind, k, m);
    ExperimentRecord rec;
    rec.m = m;
    rec.dim_x = pl.space.dim();
    rec.index_upper = numerical_index_estimate(pl.eval_space, budget, seed).upper;
    rec.lie_dim_primal = lie_algebra_basis(pl.eval_space).dimension;

    const int ng = static_cast<int>(pl.grid.gap_nodes.size());
    Space dual_part = kind == EKind::L2 ? lp_space(Field::Real, 2.0, 2)
                                        : lp_space(Field::Real, 1.0, 1);
    Space dual_model = ng > 0
                           ? l1_sum({dual_part, lp_space(Field::Real, 1.0, ng)})
                           : dual_part;
    LieAlgebraReport lie = lie_algebra_basis(dual_model);
    rec.lie_dim_dual_model = lie.dimension;

    if (kind == EKind::L2) {
      if (rec.lie_dim_dual_model < 1)
        throw CheckError("dual model lost its rotation generator");
      // The rotation of the plane part, extended by zero to the sum, must
      // generate an isometry group.
      Eigen::MatrixXd rot(2, 2);
      rot << 0.0, -1.0, 1.0, 0.0;
      Operator gen = ng > 0
                         ? extend_by_zero(Operator(dual_part, dual_part, rot),
                                          lp_space(Field::Real, 1.0, ng))
                         : Operator(dual_part, dual_part, rot);
      rec.dual_rotation_drift = semigroup_verify(gen).max_drift;
      if (rec.dual_rotation_drift > 1e-9)
        throw CheckError("dual rotation generator drift above tolerance");
    } else {
      rec.dual_rotation_drift = 0.0;
    }

    const auto cover = coverable_gap_nodes(pl.grid);
    rec.bump_coverage_fraction =
        ng ? static_cast<double>(cover.size()) / ng : 0.0;
    out.push_back(rec);
  }
  return out;
}

std::string experiment_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  os << "m,dim_x,index_upper,lie_dim_primal,lie_dim_dual_model,"
        "bump_coverage_fraction,dual_rotation_drift\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%d,%d,%.12g,%.12g\n", r.m,
                  r.dim_x, r.index_upper, r.lie_dim_primal,
                  r.lie_dim_dual_model, r.bump_coverage_fraction,
                  r.dual_rotation_drift);
    os << buf;
  }
  return os.str();
}

}  // namespace banachlab
