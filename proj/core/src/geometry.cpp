#include "banachlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "banachlab/errors.hpp"
#include "banachlab/lp.hpp"

namespace banachlab {
namespace {

constexpr long kEnumerationBudget = 2'000'000;

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);  // descending
  }
  return false;
}

Eigen::MatrixXd from_columns(const std::vector<Eigen::VectorXd>& cols, int d) {
  Eigen::MatrixXd out(d, static_cast<int>(cols.size()));
  for (int j = 0; j < out.cols(); ++j) out.col(j) = cols[static_cast<size_t>(j)];
  return out;
}

}  // namespace

Eigen::MatrixXd dedup_columns(const Eigen::MatrixXd& pts, double tol) {
  std::vector<Eigen::VectorXd> kept;
  for (int j = 0; j < pts.cols(); ++j) {
    bool dup = false;
    for (const auto& k : kept) {
      if ((k - pts.col(j)).lpNorm<Eigen::Infinity>() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(pts.col(j));
  }
  return from_columns(kept, static_cast<int>(pts.rows()));
}

Eigen::MatrixXd symmetrize_columns(const Eigen::MatrixXd& pts, double tol) {
  Eigen::MatrixXd both(pts.rows(), 2 * pts.cols());
  both.leftCols(pts.cols()) = pts;
  both.rightCols(pts.cols()) = -pts;
  return dedup_columns(both, tol);
}

Eigen::MatrixXd hull_reduce(const Eigen::MatrixXd& pts, double tol) {
  const int k = static_cast<int>(pts.cols());
  if (k <= 1) return pts;
  std::vector<bool> keep(static_cast<size_t>(k), true);
  for (int j = 0; j < k; ++j) {
    std::vector<Eigen::VectorXd> others;
    for (int i = 0; i < k; ++i) {
      if (i != j && keep[static_cast<size_t>(i)]) others.push_back(pts.col(i));
    }
    if (others.empty()) continue;
    if (in_convex_hull(from_columns(others, static_cast<int>(pts.rows())),
                       pts.col(j), tol)) {
      keep[static_cast<size_t>(j)] = false;
    }
  }
  std::vector<Eigen::VectorXd> kept;
  for (int j = 0; j < k; ++j) {
    if (keep[static_cast<size_t>(j)]) kept.push_back(pts.col(j));
  }
  return from_columns(kept, static_cast<int>(pts.rows()));
}

Eigen::MatrixXd canonical_columns(Eigen::MatrixXd pts) {
  std::vector<int> order(static_cast<size_t>(pts.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lex_less(pts.col(a), pts.col(b));
  });
  Eigen::MatrixXd out(pts.rows(), pts.cols());
  for (int j = 0; j < pts.cols(); ++j) out.col(j) = pts.col(order[static_cast<size_t>(j)]);
  return out;
}

namespace {

Eigen::MatrixXd polar_vertices_2d(const Eigen::MatrixXd& verts) {
  std::vector<int> order(static_cast<size_t>(verts.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::atan2(verts(1, a), verts(0, a)) <
           std::atan2(verts(1, b), verts(0, b));
  });
  const int k = static_cast<int>(order.size());
  Eigen::MatrixXd out(2, k);
  for (int j = 0; j < k; ++j) {
    const Eigen::Vector2d a = verts.col(order[static_cast<size_t>(j)]);
    const Eigen::Vector2d b = verts.col(order[static_cast<size_t>((j + 1) % k)]);
    Eigen::Matrix2d M;
    M.row(0) = a.transpose();
    M.row(1) = b.transpose();
    out.col(j) = M.partialPivLu().solve(Eigen::Vector2d::Ones());
  }
  return out;
}

Eigen::MatrixXd polar_vertices_nd(const Eigen::MatrixXd& verts,
                                  double merge_tol) {
  const int d = static_cast<int>(verts.rows());
  const int k = static_cast<int>(verts.cols());
  long combos = 1;
  for (int i = 0; i < d; ++i) {
    combos = combos * (k - i) / (i + 1);
    if (combos > kEnumerationBudget) {
      throw CapabilityError("polar enumeration budget exceeded");
    }
  }
  std::vector<Eigen::VectorXd> found;
  std::vector<int> idx(static_cast<size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  Eigen::MatrixXd M(d, d);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);
  while (true) {
    for (int i = 0; i < d; ++i) M.row(i) = verts.col(idx[static_cast<size_t>(i)]).transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.isInvertible()) {
      const Eigen::VectorXd y = lu.solve(ones);
      if ((verts.transpose() * y).maxCoeff() <= 1.0 + 1e-9) {
        bool dup = false;
        for (const auto& f : found) {
          if ((f - y).lpNorm<Eigen::Infinity>() <= merge_tol) {
            dup = true;
            break;
          }
        }
        if (!dup) found.push_back(y);
      }
    }
    // next combination
    int pos = d - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == k - d + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < d; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
  if (found.empty()) throw Error("polar_vertices: no vertices found");
  return from_columns(found, d);
}

}  // namespace

Eigen::MatrixXd polar_vertices(const Eigen::MatrixXd& verts, double merge_tol) {
  const int d = static_cast<int>(verts.rows());
  if (verts.cols() < d + 1) {
    throw ConstructionError("polar_vertices: polytope is not full-dimensional");
  }
  Eigen::MatrixXd out;
  if (d == 1) {
    const double r = verts.cwiseAbs().maxCoeff();
    out.resize(1, 2);
    out(0, 0) = 1.0 / r;
    out(0, 1) = -1.0 / r;
  } else if (d == 2) {
    out = polar_vertices_2d(hull_reduce(dedup_columns(verts, 1e-12), 1e-9));
    out = dedup_columns(out, merge_tol);
  } else {
    out = polar_vertices_nd(verts, merge_tol);
  }
  return canonical_columns(out);
}

Eigen::MatrixXd hpolytope_vertices(const Eigen::MatrixXd& normals,
                                   double merge_tol) {
  return polar_vertices(symmetrize_columns(normals, 1e-12), merge_tol);
}

double support_2d(const std::vector<Eigen::Vector2d>& pts,
                  const Eigen::Vector2d& dir) {
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) h = std::max(h, dir.dot(p));
  return h;
}

double cone_hull_violation_2d(const std::vector<Eigen::Vector2d>& pts,
                              const Eigen::Vector2d& p, int ndirs) {
  double worst = 0.0;
  for (int i = 0; i < ndirs; ++i) {
    const double th = 2.0 * M_PI * i / ndirs;
    const Eigen::Vector2d dir(std::cos(th), std::sin(th));
    // support of conv({0} union [0,1]*pts)
    const double h = std::max(0.0, support_2d(pts, dir));
    worst = std::max(worst, dir.dot(p) - h);
  }
  return worst;
}

}  // namespace banachlab
