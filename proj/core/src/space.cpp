#include "banachlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "banachlab/engine.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/geometry.hpp"
#include "banachlab/rng.hpp"

namespace banachlab {

namespace detail {
struct SpaceImpl {
  Field field = Field::Real;
  Descriptor desc;
  int dim = 0;
  Node node;
};
}  // namespace detail

int Space::dim() const { return impl_->dim; }
Field Space::field() const { return impl_->field; }
const Descriptor& Space::desc() const { return impl_->desc; }
const detail::Node& Space::node() const { return impl_->node; }

namespace {

constexpr double kDedupTol = 1e-12;

bool is_inf(double p) { return std::isinf(p); }

int descriptor_dim(const Descriptor& d) {
  if (auto* lp = std::get_if<LpDesc>(&d)) return lp->dim;
  if (auto* poly = std::get_if<PolyhedralDesc>(&d))
    return static_cast<int>(poly->vertices.rows());
  if (auto* sum = std::get_if<SumDesc>(&d)) {
    int n = 0;
    for (const auto& part : sum->parts) n += part.dim();
    return n;
  }
  return static_cast<int>(std::get<SupSubspaceDesc>(d).basis.cols());
}

Eigen::MatrixXd canonicalize_vertices(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 1 || raw.cols() < 1)
    throw ConstructionError("polyhedral space needs a nonempty vertex set");
  Eigen::MatrixXd sym = symmetrize_columns(raw, kDedupTol);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sym);
  qr.setThreshold(1e-10);
  if (qr.rank() < raw.rows())
    throw ConstructionError("polyhedral vertices do not span the space");
  return canonical_columns(hull_reduce(sym, 1e-10));
}

}  // namespace

Space make_space(Field field, Descriptor desc) {
  auto impl = std::make_shared<detail::SpaceImpl>();
  impl->field = field;

  if (auto* lp = std::get_if<LpDesc>(&desc)) {
    if (lp->dim < 1) throw ConstructionError("lp space needs dim >= 1");
    if (!(lp->p >= 1.0))
      throw ConstructionError("lp space needs p in [1, inf]");
  } else if (auto* poly = std::get_if<PolyhedralDesc>(&desc)) {
    if (field != Field::Real)
      throw ConstructionError("polyhedral spaces are real only");
    poly->vertices = canonicalize_vertices(poly->vertices);
  } else if (auto* sum = std::get_if<SumDesc>(&desc)) {
    if (sum->parts.empty()) throw ConstructionError("sum needs parts");
    for (const auto& part : sum->parts) {
      if (!part.valid()) throw ConstructionError("sum part is invalid");
      if (part.field() != field)
        throw ConstructionError("sum parts must share the field");
    }
  } else {
    auto& ss = std::get<SupSubspaceDesc>(desc);
    if (field != Field::Real)
      throw ConstructionError("sup-norm subspaces are real only");
    if (ss.basis.rows() == 0 || ss.basis.cols() == 0)
      throw ConstructionError("sup-norm subspace needs a nonempty basis");
    if (static_cast<int>(ss.nodes.size()) != ss.basis.rows())
      throw ConstructionError("node count must match basis rows");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ss.basis);
    qr.setThreshold(1e-10);
    if (qr.rank() < ss.basis.cols())
      throw ConstructionError("sup-norm subspace basis is rank deficient");
  }

  impl->desc = std::move(desc);
  impl->dim = descriptor_dim(impl->desc);

  Space s;
  s.impl_ = impl;
  impl->node = detail::normalize(s);
  return s;
}

Space lp_space(Field field, double p, int dim) {
  return make_space(field, LpDesc{p, dim});
}

Space polyhedral_space(const Eigen::MatrixXd& vertices) {
  return make_space(Field::Real, PolyhedralDesc{vertices});
}

Space sup_subspace(std::vector<double> nodes, const Eigen::MatrixXd& basis) {
  return make_space(Field::Real, SupSubspaceDesc{std::move(nodes), basis});
}

double space_norm(const Space& s, const Eigen::VectorXd& x) {
  if (x.size() != s.dim()) throw DimensionError("vector dim mismatch");
  return detail::node_norm(s.node(), x);
}

double space_norm(const Space& s, const Eigen::VectorXcd& x) {
  if (x.size() != s.dim()) throw DimensionError("vector dim mismatch");
  if (s.field() == Field::Real) {
    if (x.imag().cwiseAbs().maxCoeff() > 0)
      throw ConstructionError("complex vector on a real space");
    return detail::node_norm(s.node(), Eigen::VectorXd(x.real()));
  }
  return detail::node_norm(s.node(), x);
}

double dual_norm(const Space& s, const Eigen::VectorXd& f) {
  if (f.size() != s.dim()) throw DimensionError("functional dim mismatch");
  return detail::node_dual_norm(s.node(), f);
}

Space dual_space(const Space& s) {
  const Descriptor& d = s.desc();
  if (auto* lp = std::get_if<LpDesc>(&d)) {
    double q;
    if (lp->p == 1.0)
      q = lp_infinity();
    else if (is_inf(lp->p))
      q = 1.0;
    else
      q = lp->p / (lp->p - 1.0);
    return make_space(s.field(), LpDesc{q, lp->dim});
  }
  if (auto* poly = std::get_if<PolyhedralDesc>(&d)) {
    return make_space(Field::Real,
                      PolyhedralDesc{polar_vertices(poly->vertices, 1e-10)});
  }
  if (auto* sum = std::get_if<SumDesc>(&d)) {
    SumDesc dual;
    dual.kind = sum->kind == SumKind::L1 ? SumKind::Linf : SumKind::L1;
    for (const auto& part : sum->parts) dual.parts.push_back(dual_space(part));
    return make_space(s.field(), std::move(dual));
  }
  const auto& ss = std::get<SupSubspaceDesc>(d);
  // Dual ball = conv(+- evaluation functionals), i.e. the basis rows.
  return make_space(Field::Real,
                    PolyhedralDesc{Eigen::MatrixXd(ss.basis.transpose())});
}

std::vector<Eigen::VectorXd> extreme_points(const Space& s) {
  if (s.field() != Field::Real)
    throw CapabilityError("extreme point enumeration is real only");
  return detail::node_extreme_points(s.node());
}

namespace {

void append_pair(PairEnumeration& out, const Eigen::VectorXcd& x,
                 const Eigen::VectorXcd& f) {
  out.pairs.push_back(DualityPair{x, f});
}

void append_real_pair(PairEnumeration& out, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& f) {
  append_pair(out, x.cast<std::complex<double>>(),
              f.cast<std::complex<double>>());
}

// Sesquilinear representer of a norming functional: f(y) = sum y_i conj(f_i).
Eigen::VectorXcd complex_norming(const detail::Node& n,
                                 const Eigen::VectorXcd& x) {
  using detail::NodeKind;
  const double nx = detail::node_norm(n, x);
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(x.size());
  switch (n.kind) {
    case NodeKind::Hilbert:
      return x / nx;
    case NodeKind::L1Block:
      for (int i = 0; i < x.size(); ++i) {
        double a = std::abs(x[i]);
        f[i] = a > 0 ? x[i] / a : std::complex<double>(1, 0);
      }
      return f;
    case NodeKind::LinfBlock: {
      int best = 0;
      x.cwiseAbs().maxCoeff(&best);
      f[best] = x[best] / std::abs(x[best]);
      return f;
    }
    case NodeKind::LpGen: {
      for (int i = 0; i < x.size(); ++i) {
        double a = std::abs(x[i]) / nx;
        if (a > 0) f[i] = x[i] / std::abs(x[i]) * std::pow(a, n.p - 1.0);
      }
      return f;
    }
    default:
      throw CapabilityError("complex pairs need an lp space");
  }
}

void sampled_pairs(const Space& s, int budget, PairEnumeration& out) {
  const detail::Node& node = s.node();
  using detail::NodeKind;
  if (s.field() == Field::Complex) {
    auto xs = sphere_covering_complex(s.dim(), std::max(budget, 8));
    for (const auto& raw : xs) {
      double nx = detail::node_norm(node, raw);
      if (nx < 1e-12) continue;
      Eigen::VectorXcd x = raw / nx;
      append_pair(out, x, complex_norming(node, x));
    }
    return;
  }
  if (node.kind == NodeKind::SumL1 || node.kind == NodeKind::SumLinf) {
    // Injected pairs from each part keep exactness where parts allow it.
    int per = std::max(budget / static_cast<int>(node.parts.size()), 8);
    for (size_t k = 0; k < node.parts.size(); ++k) {
      const detail::Node& part = node.parts[k];
      std::vector<Eigen::VectorXd> px, pf;
      if (detail::has_finite_pairs(part)) {
        auto np = detail::node_pairs(part);
        px = np.x;
        pf = np.f;
      } else {
        for (const auto& raw : sphere_covering(part.dim, per)) {
          double nx = detail::node_norm(part, raw);
          if (nx < 1e-12) continue;
          Eigen::VectorXd x = raw / nx;
          px.push_back(x);
          pf.push_back(detail::norming_functional(part, x));
        }
      }
      for (size_t i = 0; i < px.size(); ++i) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(s.dim());
        Eigen::VectorXd f = Eigen::VectorXd::Zero(s.dim());
        x.segment(node.offsets[k], part.dim) = px[i];
        f.segment(node.offsets[k], part.dim) = pf[i];
        append_real_pair(out, x, f);
      }
    }
    return;
  }
  for (const auto& raw : sphere_covering(s.dim(), std::max(budget, 8))) {
    double nx = detail::node_norm(node, raw);
    if (nx < 1e-12) continue;
    Eigen::VectorXd x = raw / nx;
    append_real_pair(out, x, detail::norming_functional(node, x));
  }
}

}  // namespace

PairEnumeration duality_pairs(const Space& s, int budget,
                              const std::vector<Eigen::VectorXcd>& extra) {
  PairEnumeration out;
  out.tol_pair = 1e-9;
  if (s.field() == Field::Real && detail::has_finite_pairs(s.node())) {
    auto np = detail::node_pairs(s.node());
    for (size_t i = 0; i < np.x.size(); ++i)
      append_real_pair(out, np.x[i], np.f[i]);
    out.exact = true;
  } else {
    out.exact = false;
    out.tol_pair = 1e-6;
    sampled_pairs(s, budget, out);
  }
  for (const auto& raw : extra) {
    if (s.field() == Field::Real) {
      Eigen::VectorXd xr = raw.real();
      double nx = detail::node_norm(s.node(), xr);
      if (nx < 1e-12) continue;
      xr /= nx;
      append_real_pair(out, xr, detail::norming_functional(s.node(), xr));
    } else {
      double nx = detail::node_norm(s.node(), raw);
      if (nx < 1e-12) continue;
      Eigen::VectorXcd x = raw / nx;
      append_pair(out, x, complex_norming(s.node(), x));
    }
  }
  return out;
}

bool approx_equal(const Space& a, const Space& b, double tol) {
  if (a.field() != b.field() || a.dim() != b.dim()) return false;
  if (a.desc().index() != b.desc().index()) return false;
  if (auto* lp = std::get_if<LpDesc>(&a.desc())) {
    const auto& o = std::get<LpDesc>(b.desc());
    if (is_inf(lp->p) != is_inf(o.p)) return false;
    return is_inf(lp->p) || std::abs(lp->p - o.p) <= tol;
  }
  if (auto* poly = std::get_if<PolyhedralDesc>(&a.desc())) {
    const auto& o = std::get<PolyhedralDesc>(b.desc());
    if (poly->vertices.cols() != o.vertices.cols()) return false;
    return (poly->vertices - o.vertices).cwiseAbs().maxCoeff() <= tol;
  }
  if (auto* sum = std::get_if<SumDesc>(&a.desc())) {
    const auto& o = std::get<SumDesc>(b.desc());
    if (sum->kind != o.kind || sum->parts.size() != o.parts.size())
      return false;
    for (size_t i = 0; i < sum->parts.size(); ++i)
      if (!approx_equal(sum->parts[i], o.parts[i], tol)) return false;
    return true;
  }
  const auto& ss = std::get<SupSubspaceDesc>(a.desc());
  const auto& o = std::get<SupSubspaceDesc>(b.desc());
  if (ss.nodes.size() != o.nodes.size()) return false;
  for (size_t i = 0; i < ss.nodes.size(); ++i)
    if (std::abs(ss.nodes[i] - o.nodes[i]) > tol) return false;
  return (ss.basis - o.basis).cwiseAbs().maxCoeff() <= tol;
}

std::string describe(const Space& s) {
  std::ostringstream os;
  if (auto* lp = std::get_if<LpDesc>(&s.desc())) {
    os << (s.field() == Field::Complex ? "complex_lp(" : "lp(");
    if (is_inf(lp->p))
      os << "inf";
    else
      os << lp->p;
    os << ", " << lp->dim << ")";
  } else if (auto* poly = std::get_if<PolyhedralDesc>(&s.desc())) {
    os << "polyhedral(dim=" << poly->vertices.rows()
       << ", vertices=" << poly->vertices.cols() << ")";
  } else if (auto* sum = std::get_if<SumDesc>(&s.desc())) {
    os << (sum->kind == SumKind::L1 ? "l1_sum[" : "linf_sum[");
    for (size_t i = 0; i < sum->parts.size(); ++i) {
      if (i) os << ", ";
      os << describe(sum->parts[i]);
    }
    os << "]";
  } else {
    const auto& ss = std::get<SupSubspaceDesc>(s.desc());
    os << "sup_subspace(nodes=" << ss.nodes.size()
       << ", dim=" << ss.basis.cols() << ")";
  }
  return os.str();
}

}  // namespace banachlab
