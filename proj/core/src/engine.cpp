#include "banachlab/engine.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "banachlab/circle_opt.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/geometry.hpp"
#include "banachlab/lp.hpp"
#include "banachlab/rng.hpp"

namespace banachlab::detail {

namespace {

constexpr long kPairGuard = 2'000'000;
constexpr int kCubeGuard = 20;       // LinfBlock extreme enumeration: 2^dim
constexpr int kCubeFaceGuard = 12;   // coupled face enumeration: 2^(dim-1)
constexpr double kMergeTol = 1e-10;

Node block(NodeKind kind, int dim, Field field) {
  Node n;
  n.kind = kind;
  n.dim = dim;
  n.field = field;
  return n;
}

bool is_one_dim_block(const Node& n) {
  return n.dim == 1 && (n.kind == NodeKind::L1Block ||
                        n.kind == NodeKind::LinfBlock ||
                        n.kind == NodeKind::Hilbert);
}

void set_offsets(Node& n) {
  n.offsets.clear();
  int at = 0;
  for (const auto& part : n.parts) {
    n.offsets.push_back(at);
    at += part.dim;
  }
  n.dim = at;
}

Node make_sum(NodeKind kind, std::vector<Node> parts, Field field) {
  // Flatten nested sums of the same kind, then merge adjacent plain blocks:
  // l1-sums of l1 blocks are one l1 block, and likewise for sup norms.
  std::vector<Node> flat;
  for (auto& part : parts) {
    if (part.kind == kind) {
      for (auto& sub : part.parts) flat.push_back(std::move(sub));
    } else {
      flat.push_back(std::move(part));
    }
  }
  const NodeKind blockKind =
      kind == NodeKind::SumL1 ? NodeKind::L1Block : NodeKind::LinfBlock;
  std::vector<Node> merged;
  for (auto& part : flat) {
    bool mergeable = part.kind == blockKind || is_one_dim_block(part);
    if (mergeable && !merged.empty() && merged.back().kind == blockKind) {
      merged.back().dim += part.dim;
    } else if (mergeable) {
      merged.push_back(block(blockKind, part.dim, field));
    } else {
      merged.push_back(std::move(part));
    }
  }
  if (merged.size() == 1) return std::move(merged.front());
  Node n = block(kind, 0, field);
  n.parts = std::move(merged);
  set_offsets(n);
  return n;
}

}  // namespace

Node normalize(const Space& s) {
  const Field field = s.field();
  const Descriptor& d = s.desc();
  if (auto* lp = std::get_if<LpDesc>(&d)) {
    if (lp->dim == 1) return block(NodeKind::L1Block, 1, field);
    if (lp->p == 1.0) return block(NodeKind::L1Block, lp->dim, field);
    if (std::isinf(lp->p)) return block(NodeKind::LinfBlock, lp->dim, field);
    if (lp->p == 2.0) return block(NodeKind::Hilbert, lp->dim, field);
    Node n = block(NodeKind::LpGen, lp->dim, field);
    n.p = lp->p;
    return n;
  }
  if (auto* poly = std::get_if<PolyhedralDesc>(&d)) {
    Node n = block(NodeKind::VRep, static_cast<int>(poly->vertices.rows()),
                   field);
    n.V = poly->vertices;
    return n;
  }
  if (auto* sum = std::get_if<SumDesc>(&d)) {
    std::vector<Node> parts;
    parts.reserve(sum->parts.size());
    for (const auto& part : sum->parts) parts.push_back(part.node());
    return make_sum(sum->kind == SumKind::L1 ? NodeKind::SumL1
                                             : NodeKind::SumLinf,
                    std::move(parts), field);
  }
  const auto& ss = std::get<SupSubspaceDesc>(d);
  const int dim = static_cast<int>(ss.basis.cols());
  Eigen::MatrixXd H = ss.basis.transpose();
  if (dim <= 2) {
    Node n = block(NodeKind::VRep, dim, field);
    n.H = H;
    n.V = hpolytope_vertices(H, kMergeTol);
    return n;
  }
  Node n = block(NodeKind::HRep, dim, field);
  n.H = std::move(H);
  return n;
}

const Eigen::MatrixXd& facet_normals(const Node& n) {
  if (n.H.size() > 0) return n.H;
  std::call_once(n.polar->flag, [&] {
    n.polar->mat = polar_vertices(n.V, kMergeTol);
  });
  return n.polar->mat;
}

const Eigen::MatrixXd& hrep_vertices(const Node& n) {
  if (n.V.size() > 0) return n.V;
  std::call_once(n.polar->flag, [&] {
    try {
      n.polar->mat = hpolytope_vertices(n.H, kMergeTol);
    } catch (const CapabilityError&) {
      n.polar->failed = true;
    }
  });
  if (n.polar->failed)
    throw CapabilityError("vertex enumeration budget exceeded");
  return n.polar->mat;
}

Node dual_node(const Node& n) {
  switch (n.kind) {
    case NodeKind::L1Block:
      return block(NodeKind::LinfBlock, n.dim, n.field);
    case NodeKind::LinfBlock:
      return block(NodeKind::L1Block, n.dim, n.field);
    case NodeKind::Hilbert:
      return n;
    case NodeKind::LpGen: {
      Node d = block(NodeKind::LpGen, n.dim, n.field);
      d.p = n.p / (n.p - 1.0);
      return d;
    }
    case NodeKind::VRep: {
      Node d = block(NodeKind::VRep, n.dim, n.field);
      if (n.H.size() > 0)
        d.V = canonical_columns(hull_reduce(n.H, kMergeTol));
      else
        d.V = facet_normals(n);
      d.H = n.V;
      return d;
    }
    case NodeKind::HRep: {
      Node d = block(NodeKind::VRep, n.dim, n.field);
      d.V = canonical_columns(hull_reduce(symmetrize_columns(n.H, 1e-12),
                                          kMergeTol));
      return d;
    }
    case NodeKind::SumL1:
    case NodeKind::SumLinf: {
      Node d = block(n.kind == NodeKind::SumL1 ? NodeKind::SumLinf
                                               : NodeKind::SumL1,
                     n.dim, n.field);
      for (const auto& part : n.parts) d.parts.push_back(dual_node(part));
      d.offsets = n.offsets;
      return d;
    }
  }
  throw Error("dual_node: unknown kind");
}

double node_norm(const Node& n, const Eigen::VectorXd& x) {
  switch (n.kind) {
    case NodeKind::L1Block:
      return x.lpNorm<1>();
    case NodeKind::LinfBlock:
      return x.lpNorm<Eigen::Infinity>();
    case NodeKind::Hilbert:
      return x.norm();
    case NodeKind::LpGen:
      return std::pow(x.cwiseAbs().array().pow(n.p).sum(), 1.0 / n.p);
    case NodeKind::VRep:
      if (n.H.size() > 0) return (n.H.transpose() * x).cwiseAbs().maxCoeff();
      return minkowski_norm(n.V, x);
    case NodeKind::HRep:
      return (n.H.transpose() * x).cwiseAbs().maxCoeff();
    case NodeKind::SumL1: {
      double s = 0.0;
      for (size_t k = 0; k < n.parts.size(); ++k)
        s += node_norm(n.parts[k], n.segment_of(x, k));
      return s;
    }
    case NodeKind::SumLinf: {
      double s = 0.0;
      for (size_t k = 0; k < n.parts.size(); ++k)
        s = std::max(s, node_norm(n.parts[k], n.segment_of(x, k)));
      return s;
    }
  }
  throw Error("node_norm: unknown kind");
}

double node_norm(const Node& n, const Eigen::VectorXcd& x) {
  switch (n.kind) {
    case NodeKind::L1Block:
      return x.cwiseAbs().sum();
    case NodeKind::LinfBlock:
      return x.cwiseAbs().maxCoeff();
    case NodeKind::Hilbert:
      return x.norm();
    case NodeKind::LpGen:
      return std::pow(x.cwiseAbs().array().pow(n.p).sum(), 1.0 / n.p);
    case NodeKind::SumL1: {
      double s = 0.0;
      for (size_t k = 0; k < n.parts.size(); ++k)
        s += node_norm(n.parts[k],
                       Eigen::VectorXcd(x.segment(n.offsets[k], n.parts[k].dim)));
      return s;
    }
    case NodeKind::SumLinf: {
      double s = 0.0;
      for (size_t k = 0; k < n.parts.size(); ++k)
        s = std::max(s, node_norm(n.parts[k], Eigen::VectorXcd(x.segment(
                                                  n.offsets[k],
                                                  n.parts[k].dim))));
      return s;
    }
    default:
      throw CapabilityError("complex vectors need an lp-type space");
  }
}

double node_dual_norm(const Node& n, const Eigen::VectorXd& f) {
  switch (n.kind) {
    case NodeKind::L1Block:
      return f.lpNorm<Eigen::Infinity>();
    case NodeKind::LinfBlock:
      return f.lpNorm<1>();
    case NodeKind::Hilbert:
      return f.norm();
    case NodeKind::LpGen: {
      double q = n.p / (n.p - 1.0);
      return std::pow(f.cwiseAbs().array().pow(q).sum(), 1.0 / q);
    }
    case NodeKind::VRep:
      return (n.V.transpose() * f).cwiseAbs().maxCoeff();
    case NodeKind::HRep:
      return minkowski_norm(n.H, f);
    case NodeKind::SumL1: {
      double s = 0.0;
      for (size_t k = 0; k < n.parts.size(); ++k)
        s = std::max(s, node_dual_norm(n.parts[k], n.segment_of(f, k)));
      return s;
    }
    case NodeKind::SumLinf: {
      double s = 0.0;
      for (size_t k = 0; k < n.parts.size(); ++k)
        s += node_dual_norm(n.parts[k], n.segment_of(f, k));
      return s;
    }
  }
  throw Error("node_dual_norm: unknown kind");
}

Eigen::VectorXd norming_functional(const Node& n, const Eigen::VectorXd& x) {
  const double nx = node_norm(n, x);
  if (nx < 1e-300) throw Error("norming_functional: zero vector");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n.dim);
  switch (n.kind) {
    case NodeKind::L1Block:
      for (int i = 0; i < n.dim; ++i) f[i] = x[i] < 0 ? -1.0 : 1.0;
      return f;
    case NodeKind::LinfBlock: {
      int best = 0;
      x.cwiseAbs().maxCoeff(&best);
      f[best] = x[best] < 0 ? -1.0 : 1.0;
      return f;
    }
    case NodeKind::Hilbert:
      return x / nx;
    case NodeKind::LpGen: {
      for (int i = 0; i < n.dim; ++i) {
        double a = std::abs(x[i]) / nx;
        if (a > 0) f[i] = (x[i] < 0 ? -1.0 : 1.0) * std::pow(a, n.p - 1.0);
      }
      return f;
    }
    case NodeKind::VRep: {
      if (n.H.size() > 0) {
        Eigen::Index best = 0;
        (n.H.transpose() * x).cwiseAbs().maxCoeff(&best);
        double s = n.H.col(best).dot(x) < 0 ? -1.0 : 1.0;
        return s * n.H.col(best);
      }
      FaceMaxResult r = hrep_max(n.V, x);
      if (!r.feasible) throw Error("norming_functional: support LP failed");
      return r.argmax;
    }
    case NodeKind::HRep: {
      Eigen::Index best = 0;
      (n.H.transpose() * x).cwiseAbs().maxCoeff(&best);
      double s = n.H.col(best).dot(x) < 0 ? -1.0 : 1.0;
      return s * n.H.col(best);
    }
    case NodeKind::SumL1: {
      for (size_t k = 0; k < n.parts.size(); ++k) {
        Eigen::VectorXd xk = n.segment_of(x, k);
        if (node_norm(n.parts[k], xk) > 1e-300)
          f.segment(n.offsets[k], n.parts[k].dim) =
              norming_functional(n.parts[k], xk);
      }
      return f;
    }
    case NodeKind::SumLinf: {
      size_t best = 0;
      double bn = -1.0;
      for (size_t k = 0; k < n.parts.size(); ++k) {
        double nk = node_norm(n.parts[k], n.segment_of(x, k));
        if (nk > bn) {
          bn = nk;
          best = k;
        }
      }
      f.segment(n.offsets[best], n.parts[best].dim) =
          norming_functional(n.parts[best], n.segment_of(x, best));
      return f;
    }
  }
  throw Error("norming_functional: unknown kind");
}

std::vector<Eigen::VectorXd> node_extreme_points(const Node& n) {
  std::vector<Eigen::VectorXd> out;
  switch (n.kind) {
    case NodeKind::L1Block:
      for (int i = 0; i < n.dim; ++i) {
        out.push_back(Eigen::VectorXd::Unit(n.dim, i));
        out.push_back(-Eigen::VectorXd::Unit(n.dim, i));
      }
      return out;
    case NodeKind::LinfBlock: {
      if (n.dim > kCubeGuard)
        throw CapabilityError("cube extreme enumeration budget exceeded");
      const long count = 1L << n.dim;
      for (long mask = 0; mask < count; ++mask) {
        Eigen::VectorXd v(n.dim);
        for (int i = 0; i < n.dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        out.push_back(v);
      }
      return out;
    }
    case NodeKind::Hilbert:
    case NodeKind::LpGen:
      if (n.dim == 1) {
        out.push_back(Eigen::VectorXd::Constant(1, 1.0));
        out.push_back(Eigen::VectorXd::Constant(1, -1.0));
        return out;
      }
      throw CapabilityError("smooth ball has no finite extreme set");
    case NodeKind::VRep:
      for (int j = 0; j < n.V.cols(); ++j) out.push_back(n.V.col(j));
      return out;
    case NodeKind::HRep: {
      const Eigen::MatrixXd& V = hrep_vertices(n);
      for (int j = 0; j < V.cols(); ++j) out.push_back(V.col(j));
      return out;
    }
    case NodeKind::SumL1:
      for (size_t k = 0; k < n.parts.size(); ++k)
        for (const auto& v : node_extreme_points(n.parts[k])) {
          Eigen::VectorXd x = Eigen::VectorXd::Zero(n.dim);
          x.segment(n.offsets[k], n.parts[k].dim) = v;
          out.push_back(x);
        }
      return out;
    case NodeKind::SumLinf: {
      std::vector<std::vector<Eigen::VectorXd>> per;
      long count = 1;
      for (const auto& part : n.parts) {
        per.push_back(node_extreme_points(part));
        count *= static_cast<long>(per.back().size());
        if (count > kPairGuard)
          throw CapabilityError("product extreme enumeration budget exceeded");
      }
      std::vector<long> idx(n.parts.size(), 0);
      for (long c = 0; c < count; ++c) {
        Eigen::VectorXd x(n.dim);
        long rest = c;
        for (size_t k = 0; k < n.parts.size(); ++k) {
          long i = rest % per[k].size();
          rest /= per[k].size();
          x.segment(n.offsets[k], n.parts[k].dim) = per[k][i];
        }
        out.push_back(x);
      }
      return out;
    }
  }
  throw Error("node_extreme_points: unknown kind");
}

namespace {

long extreme_count_bound(const Node& n) {
  switch (n.kind) {
    case NodeKind::L1Block:
      return 2L * n.dim;
    case NodeKind::LinfBlock:
      return n.dim > kCubeGuard ? kPairGuard + 1 : (1L << n.dim);
    case NodeKind::Hilbert:
    case NodeKind::LpGen:
      return n.dim == 1 ? 2 : kPairGuard + 1;
    case NodeKind::VRep:
      return n.V.cols();
    case NodeKind::HRep:
      return n.dim <= 2 ? 2L * n.H.cols() : kPairGuard + 1;
    case NodeKind::SumL1: {
      long s = 0;
      for (const auto& part : n.parts) {
        s += extreme_count_bound(part);
        if (s > kPairGuard) return kPairGuard + 1;
      }
      return s;
    }
    case NodeKind::SumLinf: {
      long s = 1;
      for (const auto& part : n.parts) {
        s *= extreme_count_bound(part);
        if (s > kPairGuard) return kPairGuard + 1;
      }
      return s;
    }
  }
  return kPairGuard + 1;
}

}  // namespace

bool has_finite_pairs(const Node& n) {
  long x = extreme_count_bound(n);
  if (x > kPairGuard) return false;
  long f = extreme_count_bound(dual_node(n));
  return f <= kPairGuard && x * f <= kPairGuard;
}

NodePairs node_pairs(const Node& n) {
  NodePairs out;
  auto X = node_extreme_points(n);
  auto F = node_extreme_points(dual_node(n));
  if (static_cast<long>(X.size()) * static_cast<long>(F.size()) > kPairGuard)
    throw CapabilityError("pair enumeration budget exceeded");
  for (const auto& f : F)
    for (const auto& x : X)
      if (std::abs(f.dot(x) - 1.0) <= 1e-9) {
        out.x.push_back(x);
        out.f.push_back(f);
      }
  return out;
}

namespace {

SupReResult hilbert_sup_re(const Eigen::MatrixXd& T) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (T + T.transpose()));
  SupReResult r;
  r.value = es.eigenvalues().maxCoeff();
  int top = static_cast<int>(es.eigenvalues().size()) - 1;
  r.wit_x = es.eigenvectors().col(top);
  r.wit_f = r.wit_x;
  r.exact = true;
  return r;
}

SupReResult l1_sup_re(const Eigen::MatrixXd& T) {
  SupReResult r;
  r.value = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(T.rows());
  for (int i = 0; i < n; ++i) {
    double v = T(i, i);
    for (int j = 0; j < n; ++j)
      if (j != i) v += std::abs(T(j, i));
    if (v > r.value) {
      r.value = v;
      r.wit_x = Eigen::VectorXd::Unit(n, i);
      r.wit_f = Eigen::VectorXd::Zero(n);
      r.wit_f[i] = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i && T(j, i) != 0.0) r.wit_f[j] = T(j, i) < 0 ? -1.0 : 1.0;
    }
  }
  r.exact = true;
  return r;
}

SupReResult linf_sup_re(const Eigen::MatrixXd& T) {
  SupReResult r;
  r.value = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(T.rows());
  for (int i = 0; i < n; ++i) {
    double v = T(i, i);
    for (int j = 0; j < n; ++j)
      if (j != i) v += std::abs(T(i, j));
    if (v > r.value) {
      r.value = v;
      r.wit_f = Eigen::VectorXd::Unit(n, i);
      r.wit_x = Eigen::VectorXd::Zero(n);
      r.wit_x[i] = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) r.wit_x[j] = T(i, j) < 0 ? -1.0 : 1.0;
    }
  }
  r.exact = true;
  return r;
}

SupReResult vrep_sup_re(const Node& n, const Eigen::MatrixXd& T) {
  const Eigen::MatrixXd& F = n.H.size() > 0 ? n.H : facet_normals(n);
  SupReResult r;
  r.value = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < F.cols(); ++a) {
    for (int j = 0; j < n.V.cols(); ++j) {
      double pairing = F.col(a).dot(n.V.col(j));
      double s;
      if (std::abs(pairing - 1.0) <= 1e-9)
        s = 1.0;
      else if (std::abs(pairing + 1.0) <= 1e-9)
        s = -1.0;
      else
        continue;
      double v = s * F.col(a).dot(T * n.V.col(j));
      if (v > r.value) {
        r.value = v;
        r.wit_x = n.V.col(j);
        r.wit_f = s * F.col(a);
      }
    }
  }
  if (!std::isfinite(r.value)) throw Error("vrep_sup_re: no pairs found");
  r.exact = true;
  return r;
}

SupReResult hrep_sup_re(const Node& n, const Eigen::MatrixXd& T) {
  SupReResult r;
  r.value = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < n.H.cols(); ++a) {
    Eigen::VectorXd f = n.H.col(a);
    FaceMaxResult fm = hrep_max(n.H, T.transpose() * f, &f);
    if (!fm.feasible) continue;
    if (fm.value > r.value) {
      r.value = fm.value;
      r.wit_x = fm.argmax;
      r.wit_f = f;
    }
  }
  if (!std::isfinite(r.value)) throw Error("hrep_sup_re: no active facet");
  r.exact = true;
  return r;
}

SupReResult sampled_sup_re(const Node& n, const Eigen::MatrixXd& T,
                           int budget) {
  SupReResult r;
  r.value = -std::numeric_limits<double>::infinity();
  for (const auto& raw : sphere_covering(n.dim, std::max(64, budget * 8))) {
    double nx = node_norm(n, raw);
    if (nx < 1e-12) continue;
    Eigen::VectorXd x = raw / nx;
    Eigen::VectorXd f = norming_functional(n, x);
    double v = f.dot(T * x);
    if (v > r.value) {
      r.value = v;
      r.wit_x = x;
      r.wit_f = f;
    }
  }
  r.exact = false;
  return r;
}

struct PartContext {
  const Node& sum;
  const Eigen::MatrixXd& T;
  size_t k;

  const Node& part() const { return sum.parts[k]; }
  int off() const { return sum.offsets[k]; }

  // f(T x) for the injected pair (x in part k, f_k given, f_l norming on the
  // cross images); equals f_k^T T_kk x + sum of cross norms.
  double value(const Eigen::VectorXd& x, const Eigen::VectorXd& fk) const {
    const int dk = part().dim;
    double v = fk.dot(T.block(off(), off(), dk, dk) * x);
    for (size_t l = 0; l < sum.parts.size(); ++l) {
      if (l == k) continue;
      Eigen::VectorXd img =
          T.block(sum.offsets[l], off(), sum.parts[l].dim, dk) * x;
      v += node_norm(sum.parts[l], img);
    }
    return v;
  }

  double cross_only(const Eigen::VectorXd& x) const {
    double v = 0.0;
    for (size_t l = 0; l < sum.parts.size(); ++l) {
      if (l == k) continue;
      Eigen::VectorXd img =
          T.block(sum.offsets[l], off(), sum.parts[l].dim, part().dim) * x;
      v += node_norm(sum.parts[l], img);
    }
    return v;
  }

  bool cross_zero() const {
    for (size_t l = 0; l < sum.parts.size(); ++l) {
      if (l == k) continue;
      if (T.block(sum.offsets[l], off(), sum.parts[l].dim, part().dim)
              .cwiseAbs()
              .maxCoeff() != 0.0)
        return false;
    }
    return true;
  }

  void lift(SupReResult& r, const Eigen::VectorXd& x,
            const Eigen::VectorXd& fk) const {
    r.wit_x = Eigen::VectorXd::Zero(sum.dim);
    r.wit_f = Eigen::VectorXd::Zero(sum.dim);
    r.wit_x.segment(off(), part().dim) = x;
    r.wit_f.segment(off(), part().dim) = fk;
    for (size_t l = 0; l < sum.parts.size(); ++l) {
      if (l == k) continue;
      Eigen::VectorXd img =
          T.block(sum.offsets[l], off(), sum.parts[l].dim, part().dim) * x;
      if (node_norm(sum.parts[l], img) > 1e-300)
        r.wit_f.segment(sum.offsets[l], sum.parts[l].dim) =
            norming_functional(sum.parts[l], img);
    }
  }
};

SupReResult part_l1block(const PartContext& ctx) {
  const Node& p = ctx.part();
  const Eigen::MatrixXd Tkk =
      ctx.T.block(ctx.off(), ctx.off(), p.dim, p.dim);
  SupReResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.dim; ++i) {
    Eigen::VectorXd x = Eigen::VectorXd::Unit(p.dim, i);
    double diag = Tkk(i, i);
    for (int j = 0; j < p.dim; ++j)
      if (j != i) diag += std::abs(Tkk(j, i));
    double v = diag + ctx.cross_only(x);
    if (v > best.value) {
      best.value = v;
      Eigen::VectorXd fk = Eigen::VectorXd::Zero(p.dim);
      fk[i] = 1.0;
      for (int j = 0; j < p.dim; ++j)
        if (j != i && Tkk(j, i) != 0.0) fk[j] = Tkk(j, i) < 0 ? -1.0 : 1.0;
      ctx.lift(best, x, fk);
    }
  }
  best.exact = true;
  return best;
}

SupReResult part_hilbert(const PartContext& ctx, int budget) {
  const Node& p = ctx.part();
  const Eigen::MatrixXd Tkk =
      ctx.T.block(ctx.off(), ctx.off(), p.dim, p.dim);
  SupReResult best;
  if (ctx.cross_zero()) {
    SupReResult h = hilbert_sup_re(Tkk);
    best.value = h.value;
    best.exact = true;
    ctx.lift(best, h.wit_x, h.wit_f);
    return best;
  }
  if (p.dim == 2) {
    auto eval = [&](double th) {
      Eigen::VectorXd y(2);
      y << std::cos(th), std::sin(th);
      return y.dot(Tkk * y) + ctx.cross_only(y);
    };
    CircleMax cm = circle_maximize(eval);
    Eigen::VectorXd y(2);
    y << std::cos(cm.theta), std::sin(cm.theta);
    best.value = cm.value;
    best.exact = false;
    ctx.lift(best, y, y);
    return best;
  }
  best.value = -std::numeric_limits<double>::infinity();
  for (const auto& raw : sphere_covering(p.dim, std::max(256, budget * 32))) {
    Eigen::VectorXd y = raw;
    double v = ctx.value(y, y);
    if (v > best.value) {
      best.value = v;
      ctx.lift(best, y, y);
    }
  }
  best.exact = false;
  return best;
}

SupReResult part_pairs_loop(const PartContext& ctx) {
  NodePairs np = node_pairs(ctx.part());
  SupReResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < np.x.size(); ++i) {
    double v = ctx.value(np.x[i], np.f[i]);
    if (v > best.value) {
      best.value = v;
      ctx.lift(best, np.x[i], np.f[i]);
    }
  }
  if (!std::isfinite(best.value)) throw Error("part_pairs_loop: no pairs");
  best.exact = true;
  return best;
}

SupReResult part_sampled(const PartContext& ctx, int budget) {
  const Node& p = ctx.part();
  SupReResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const auto& raw : sphere_covering(p.dim, std::max(256, budget * 32))) {
    double nx = node_norm(p, raw);
    if (nx < 1e-12) continue;
    Eigen::VectorXd x = raw / nx;
    Eigen::VectorXd fk = norming_functional(p, x);
    double v = ctx.value(x, fk);
    if (v > best.value) {
      best.value = v;
      ctx.lift(best, x, fk);
    }
  }
  best.exact = false;
  return best;
}

SupReResult suml1_sup_re(const Node& n, const Eigen::MatrixXd& T, int budget) {
  SupReResult best;
  best.value = -std::numeric_limits<double>::infinity();
  bool exact = true;
  for (size_t k = 0; k < n.parts.size(); ++k) {
    PartContext ctx{n, T, k};
    const Node& p = n.parts[k];
    SupReResult r;
    if (p.kind == NodeKind::L1Block) {
      r = part_l1block(ctx);
    } else if (p.kind == NodeKind::Hilbert) {
      r = part_hilbert(ctx, budget);
    } else if (p.kind == NodeKind::LinfBlock && !ctx.cross_zero() &&
               p.dim > kCubeFaceGuard) {
      r = part_sampled(ctx, budget);
    } else if (ctx.cross_zero() &&
               (p.kind == NodeKind::LinfBlock || p.kind == NodeKind::HRep)) {
      // Decoupled part: reuse the standalone routine on the diagonal block.
      Eigen::MatrixXd Tkk = T.block(ctx.off(), ctx.off(), p.dim, p.dim);
      SupReResult s = p.kind == NodeKind::LinfBlock ? linf_sup_re(Tkk)
                                                    : hrep_sup_re(p, Tkk);
      r.value = s.value;
      r.exact = s.exact;
      ctx.lift(r, s.wit_x, s.wit_f);
    } else if (has_finite_pairs(p)) {
      r = part_pairs_loop(ctx);
    } else {
      r = part_sampled(ctx, budget);
    }
    if (r.value > best.value) {
      best.value = r.value;
      best.wit_x = r.wit_x;
      best.wit_f = r.wit_f;
    }
    exact = exact && r.exact;
  }
  best.exact = exact;
  return best;
}

}  // namespace

SupReResult sup_re(const Node& n, const Eigen::MatrixXd& T, int budget) {
  if (T.rows() != n.dim || T.cols() != n.dim)
    throw DimensionError("sup_re: operator dim mismatch");
  switch (n.kind) {
    case NodeKind::Hilbert:
      return hilbert_sup_re(T);
    case NodeKind::L1Block:
      return l1_sup_re(T);
    case NodeKind::LinfBlock:
      return linf_sup_re(T);
    case NodeKind::VRep:
      return vrep_sup_re(n, T);
    case NodeKind::HRep:
      return hrep_sup_re(n, T);
    case NodeKind::LpGen:
      return sampled_sup_re(n, T, budget);
    case NodeKind::SumL1:
      return suml1_sup_re(n, T, budget);
    case NodeKind::SumLinf: {
      // V(T*) has the same closed convex hull as V(T); the dual sum is an
      // l1-sum, where the part decomposition applies.
      SupReResult r = sup_re(dual_node(n), T.transpose(), budget);
      std::swap(r.wit_x, r.wit_f);
      return r;
    }
  }
  throw Error("sup_re: unknown kind");
}

namespace {

// Norm-equivalent dual without polar/hull enumeration; extreme-point lists of
// the result may contain redundant generators, which norm evaluation and
// operator-norm maxima tolerate.
Node dual_node_cheap(const Node& n) {
  switch (n.kind) {
    case NodeKind::VRep: {
      if (n.H.size() > 0) {
        // Both representations known: the polar swaps them.
        Node d = block(NodeKind::VRep, n.dim, n.field);
        d.V = symmetrize_columns(n.H, 1e-12);
        d.H = n.V;
        return d;
      }
      Node d = block(NodeKind::HRep, n.dim, n.field);
      d.H = n.V;
      return d;
    }
    case NodeKind::HRep: {
      Node d = block(NodeKind::VRep, n.dim, n.field);
      d.V = symmetrize_columns(n.H, 1e-12);
      return d;
    }
    case NodeKind::SumL1:
    case NodeKind::SumLinf: {
      Node d = block(n.kind == NodeKind::SumL1 ? NodeKind::SumLinf
                                               : NodeKind::SumL1,
                     n.dim, n.field);
      for (const auto& part : n.parts) d.parts.push_back(dual_node_cheap(part));
      d.offsets = n.offsets;
      return d;
    }
    default:
      return dual_node(n);
  }
}

OpNormResult op_norm_impl(const Node& dom, const Node& cod,
                          const Eigen::MatrixXd& T, int budget,
                          bool allow_dual);

OpNormResult op_norm_extremes(const Node& dom, const Node& cod,
                              const Eigen::MatrixXd& T) {
  OpNormResult r;
  r.value = -1.0;
  for (const auto& v : node_extreme_points(dom)) {
    double nv = node_norm(cod, Eigen::VectorXd(T * v));
    if (nv > r.value) {
      r.value = nv;
      r.wit_x = v;
    }
  }
  r.exact = true;
  return r;
}

OpNormResult op_norm_sampled(const Node& dom, const Node& cod,
                             const Eigen::MatrixXd& T, int budget) {
  OpNormResult r;
  r.value = -1.0;
  for (const auto& raw : sphere_covering(dom.dim, std::max(256, budget * 32))) {
    double nx = node_norm(dom, raw);
    if (nx < 1e-12) continue;
    Eigen::VectorXd x = raw / nx;
    double nv = node_norm(cod, Eigen::VectorXd(T * x));
    if (nv > r.value) {
      r.value = nv;
      r.wit_x = x;
    }
  }
  // Power-type ascent from the best sample: alternate norming functionals of
  // the image and of the pulled-back functional.  Each step cannot decrease
  // the attained value; the result stays a lower bound.
  if (r.value > 1e-12) {
    try {
      Node ddual = dual_node(dom);
      Eigen::VectorXd x = r.wit_x;
      for (int it = 0; it < 24; ++it) {
        Eigen::VectorXd f = norming_functional(cod, Eigen::VectorXd(T * x));
        Eigen::VectorXd g = T.transpose() * f;
        if (node_dual_norm(dom, g) < 1e-12) break;
        Eigen::VectorXd next = norming_functional(ddual, g);
        double nx = node_norm(dom, next);
        if (nx < 1e-12) break;
        next /= nx;
        double nv = node_norm(cod, Eigen::VectorXd(T * next));
        if (nv <= r.value + 1e-15) break;
        r.value = nv;
        r.wit_x = next;
        x = next;
      }
    } catch (const CapabilityError&) {
      // keep the covering bound
    }
  }
  r.exact = false;
  return r;
}

OpNormResult op_norm_impl(const Node& dom, const Node& cod,
                          const Eigen::MatrixXd& T, int budget,
                          bool allow_dual) {
  if (dom.kind == NodeKind::Hilbert && cod.kind == NodeKind::Hilbert) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeThinV);
    OpNormResult r;
    r.value = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    r.wit_x = svd.matrixV().col(0);
    r.exact = true;
    return r;
  }
  switch (dom.kind) {
    case NodeKind::L1Block: {
      OpNormResult r;
      r.value = -1.0;
      for (int i = 0; i < dom.dim; ++i) {
        double nv = node_norm(cod, Eigen::VectorXd(T.col(i)));
        if (nv > r.value) {
          r.value = nv;
          r.wit_x = Eigen::VectorXd::Unit(dom.dim, i);
        }
      }
      r.exact = true;
      return r;
    }
    case NodeKind::VRep:
      return op_norm_extremes(dom, cod, T);
    case NodeKind::Hilbert: {
      if (dom.dim == 2) {
        auto eval = [&](double th) {
          Eigen::VectorXd y(2);
          y << std::cos(th), std::sin(th);
          return node_norm(cod, Eigen::VectorXd(T * y));
        };
        CircleMax cm = circle_maximize(eval);
        OpNormResult r;
        r.value = cm.value;
        r.wit_x = Eigen::VectorXd(2);
        r.wit_x << std::cos(cm.theta), std::sin(cm.theta);
        r.exact = false;
        return r;
      }
      return op_norm_sampled(dom, cod, T, budget);
    }
    case NodeKind::SumL1: {
      OpNormResult r;
      r.value = -1.0;
      bool exact = true;
      for (size_t k = 0; k < dom.parts.size(); ++k) {
        Eigen::MatrixXd Tk = T.middleCols(dom.offsets[k], dom.parts[k].dim);
        OpNormResult rk = op_norm_impl(dom.parts[k], cod, Tk, budget, true);
        if (rk.value > r.value) {
          r.value = rk.value;
          r.wit_x = Eigen::VectorXd::Zero(dom.dim);
          r.wit_x.segment(dom.offsets[k], dom.parts[k].dim) = rk.wit_x;
        }
        exact = exact && rk.exact;
      }
      r.exact = exact;
      return r;
    }
    case NodeKind::LinfBlock:
    case NodeKind::HRep:
    case NodeKind::SumLinf: {
      if (allow_dual) {
        OpNormResult r = op_norm_impl(dual_node_cheap(cod), dual_node_cheap(dom),
                                      T.transpose(), budget, false);
        // The witness lives in the dual; recover a primal witness only when
        // the domain is enumerable, otherwise report the norm alone.
        try {
          OpNormResult direct = op_norm_extremes(dom, cod, T);
          if (direct.value >= r.value - 1e-12) return direct;
        } catch (const CapabilityError&) {
          r.wit_x.resize(0);
        }
        return r;
      }
      try {
        return op_norm_extremes(dom, cod, T);
      } catch (const CapabilityError&) {
        return op_norm_sampled(dom, cod, T, budget);
      }
    }
    case NodeKind::LpGen:
      return op_norm_sampled(dom, cod, T, budget);
  }
  throw Error("op_norm: unknown kind");
}

}  // namespace

OpNormResult op_norm(const Node& dom, const Node& cod, const Eigen::MatrixXd& T,
                     int budget) {
  if (T.cols() != dom.dim || T.rows() != cod.dim)
    throw DimensionError("op_norm: shape mismatch");
  return op_norm_impl(dom, cod, T, budget, true);
}

namespace {

double complex_block_sup_re(const Node& n, const Eigen::MatrixXcd& T) {
  const int dim = n.dim;
  double best = -std::numeric_limits<double>::infinity();
  if (n.kind == NodeKind::L1Block) {
    for (int i = 0; i < dim; ++i) {
      double v = T(i, i).real();
      for (int j = 0; j < dim; ++j)
        if (j != i) v += std::abs(T(j, i));
      best = std::max(best, v);
    }
    return best;
  }
  for (int i = 0; i < dim; ++i) {
    double v = T(i, i).real();
    for (int j = 0; j < dim; ++j)
      if (j != i) v += std::abs(T(i, j));
    best = std::max(best, v);
  }
  return best;
}

Eigen::VectorXcd complex_lp_norming(const Node& n, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(n.dim);
  for (int i = 0; i < n.dim; ++i) {
    double a = std::abs(x[i]);
    if (a > 0) f[i] = x[i] / a * std::pow(a, n.p - 1.0);
  }
  return f;
}

double complex_sampled_sup_re(const Node& n, const Eigen::MatrixXcd& T,
                              int budget) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& raw : sphere_covering_complex(n.dim,
                                                 std::max(256, budget * 32))) {
    double nx = node_norm(n, raw);
    if (nx < 1e-12) continue;
    Eigen::VectorXcd x = raw / nx;
    best = std::max(best, complex_lp_norming(n, x).dot(T * x).real());
  }
  return best;
}

}  // namespace

double complex_sup_re(const Node& n, const Eigen::MatrixXcd& T, int budget) {
  if (T.rows() != n.dim || T.cols() != n.dim)
    throw DimensionError("sup_re: operator dim mismatch");
  switch (n.kind) {
    case NodeKind::Hilbert: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          0.5 * (T + T.adjoint()));
      return es.eigenvalues().maxCoeff();
    }
    case NodeKind::L1Block:
    case NodeKind::LinfBlock:
      return complex_block_sup_re(n, T);
    case NodeKind::LpGen:
      return complex_sampled_sup_re(n, T, budget);
    default:
      throw CapabilityError("complex range needs an lp space");
  }
}

double complex_radius(const Node& n, const Eigen::MatrixXcd& T, int budget,
                      bool* converged) {
  const std::complex<double> iunit(0.0, 1.0);
  auto rotated = [&](double th) {
    return Eigen::MatrixXcd(std::exp(iunit * th) * T);
  };
  if (converged) *converged = true;
  switch (n.kind) {
    case NodeKind::Hilbert:
    case NodeKind::L1Block:
    case NodeKind::LinfBlock: {
      auto eval = [&](double th) {
        return complex_sup_re(n, rotated(th), budget);
      };
      // Doubling grid until two successive resolutions agree to 1e-9.
      constexpr double kTwoPi = 6.283185307179586476925286766559;
      double prev = -std::numeric_limits<double>::infinity();
      double val = prev;
      for (int grid = 64; grid <= (1 << 16); grid *= 2) {
        val = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid; ++i)
          val = std::max(val, eval(kTwoPi * i / grid));
        if (std::abs(val - prev) < 1e-9) return val;
        prev = val;
      }
      if (converged) *converged = false;
      return val;
    }
    case NodeKind::LpGen: {
      if (converged) *converged = false;
      double best = 0.0;
      for (const auto& raw : sphere_covering_complex(
               n.dim, std::max(256, budget * 32))) {
        double nx = node_norm(n, raw);
        if (nx < 1e-12) continue;
        Eigen::VectorXcd x = raw / nx;
        best = std::max(best, std::abs(complex_lp_norming(n, x).dot(T * x)));
      }
      return best;
    }
    default:
      throw CapabilityError("complex range needs an lp space");
  }
}

namespace {

OpNormResult complex_op_norm_impl(const Node& dom, const Node& cod,
                                  const Eigen::MatrixXcd& T, int budget,
                                  bool allow_dual) {
  if (dom.kind == NodeKind::Hilbert && cod.kind == NodeKind::Hilbert) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(T);
    OpNormResult r;
    r.value = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    r.exact = true;
    return r;
  }
  if (dom.kind == NodeKind::L1Block) {
    OpNormResult r;
    r.value = -1.0;
    for (int i = 0; i < dom.dim; ++i)
      r.value = std::max(r.value, node_norm(cod, Eigen::VectorXcd(T.col(i))));
    r.exact = true;
    return r;
  }
  if (allow_dual &&
      (dom.kind == NodeKind::LinfBlock || dom.kind == NodeKind::SumLinf))
    return complex_op_norm_impl(dual_node_cheap(cod), dual_node_cheap(dom),
                                Eigen::MatrixXcd(T.adjoint()), budget, false);
  if (dom.kind == NodeKind::SumL1) {
    OpNormResult r;
    r.value = -1.0;
    bool exact = true;
    for (size_t k = 0; k < dom.parts.size(); ++k) {
      OpNormResult rk = complex_op_norm_impl(
          dom.parts[k], cod,
          Eigen::MatrixXcd(T.middleCols(dom.offsets[k], dom.parts[k].dim)),
          budget, allow_dual);
      r.value = std::max(r.value, rk.value);
      exact = exact && rk.exact;
    }
    r.exact = exact;
    return r;
  }
  // Sampled fallback over the complex sphere.
  OpNormResult r;
  r.value = -1.0;
  for (const auto& raw : sphere_covering_complex(dom.dim,
                                                 std::max(256, budget * 32))) {
    double nx = node_norm(dom, raw);
    if (nx < 1e-12) continue;
    r.value = std::max(r.value, node_norm(cod, Eigen::VectorXcd(T * raw / nx)));
  }
  r.exact = false;
  return r;
}

}  // namespace

OpNormResult complex_op_norm(const Node& dom, const Node& cod,
                             const Eigen::MatrixXcd& T, int budget) {
  if (T.cols() != dom.dim || T.rows() != cod.dim)
    throw DimensionError("op_norm: shape mismatch");
  return complex_op_norm_impl(dom, cod, T, budget, true);
}

}  // namespace banachlab::detail
