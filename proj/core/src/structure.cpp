#include "banachlab/structure.hpp"

#include <cmath>
#include <utility>

#include <Eigen/LU>

#include "banachlab/engine.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/rng.hpp"

namespace banachlab {

namespace {

Space sum_of(SumKind kind, const std::vector<Space>& parts) {
  if (parts.empty()) throw ConstructionError("sum: no parts");
  return make_space(parts.front().field(), SumDesc{kind, parts});
}

const SumDesc& sum_desc(const Space& s, const char* who) {
  const auto* d = std::get_if<SumDesc>(&s.desc());
  if (!d) throw ConstructionError(std::string(who) + ": not a sum space");
  return *d;
}

// Unit vector with the worst norm defect under S, searched over extreme
// points when available and a sphere covering otherwise.
Eigen::VectorXd defect_witness(const Operator& S) {
  const Space& y = S.domain();
  std::vector<Eigen::VectorXd> cands;
  try {
    cands = extreme_points(y);
  } catch (const CapabilityError&) {
    cands = sphere_covering(y.dim(), 64 * y.dim());
  }
  Eigen::VectorXd best = Eigen::VectorXd::Zero(y.dim());
  double worst = -1.0;
  for (const auto& c : cands) {
    double nc = space_norm(y, c);
    if (nc < 1e-12) continue;
    Eigen::VectorXd x = c / nc;
    double defect = std::abs(space_norm(y, Eigen::VectorXd(S.real() * x)) - 1.0);
    if (defect > worst) {
      worst = defect;
      best = x;
    }
  }
  return best;
}

}  // namespace

Space l1_sum(const std::vector<Space>& parts) {
  return sum_of(SumKind::L1, parts);
}

Space linf_sum(const std::vector<Space>& parts) {
  return sum_of(SumKind::Linf, parts);
}

SumLayout sum_layout(const Space& sum) {
  const SumDesc& d = sum_desc(sum, "sum_layout");
  SumLayout out;
  int at = 0;
  for (const Space& p : d.parts) {
    out.offsets.push_back(at);
    out.dims.push_back(p.dim());
    at += p.dim();
  }
  return out;
}

Operator injection(const Space& sum, int k) {
  const SumDesc& d = sum_desc(sum, "injection");
  if (k < 0 || k >= static_cast<int>(d.parts.size()))
    throw ConstructionError("injection: part index out of range");
  SumLayout lay = sum_layout(sum);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sum.dim(), lay.dims[k]);
  m.block(lay.offsets[k], 0, lay.dims[k], lay.dims[k]).setIdentity();
  if (sum.field() == Field::Complex)
    return Operator(d.parts[k], sum, Eigen::MatrixXcd(m.cast<std::complex<double>>()),
                    "injection");
  return Operator(d.parts[k], sum, m, "injection");
}

Operator projection(const Space& sum, int k) {
  const SumDesc& d = sum_desc(sum, "projection");
  if (k < 0 || k >= static_cast<int>(d.parts.size()))
    throw ConstructionError("projection: part index out of range");
  SumLayout lay = sum_layout(sum);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(lay.dims[k], sum.dim());
  m.block(0, lay.offsets[k], lay.dims[k], lay.dims[k]).setIdentity();
  if (sum.field() == Field::Complex)
    return Operator(sum, d.parts[k], Eigen::MatrixXcd(m.cast<std::complex<double>>()),
                    "projection");
  return Operator(sum, d.parts[k], m, "projection");
}

Operator extend_by_zero(const Operator& S, const Space& z) {
  if (!S.endomorphism())
    throw ConstructionError("extend_by_zero: endomorphism needed");
  const Space& y = S.domain();
  if (y.field() != z.field())
    throw ConstructionError("extend_by_zero: mixed fields");
  Space x = l1_sum({y, z});
  const int ny = y.dim(), nz = z.dim();
  if (x.field() == Field::Complex) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(ny + nz, ny + nz);
    m.topLeftCorner(ny, ny) = S.as_complex();
    return Operator(x, x, std::move(m), "zero_extension");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ny + nz, ny + nz);
  m.topLeftCorner(ny, ny) = S.real();
  return Operator(x, x, std::move(m), "zero_extension");
}

Operator extend_isometry(const Operator& S, const Space& z, double tol) {
  if (!S.endomorphism())
    throw ConstructionError("extend_isometry: endomorphism needed");
  const Space& y = S.domain();
  if (y.field() != z.field())
    throw ConstructionError("extend_isometry: mixed fields");
  if (y.field() != Field::Real || !S.is_real())
    throw CapabilityError("extend_isometry: real spaces only");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(S.real());
  if (!lu.isInvertible()) {
    Eigen::MatrixXd ker = lu.kernel();
    Eigen::VectorXd w = ker.col(0);
    w /= space_norm(y, w);
    throw IsometryError("extend_isometry: operator is singular", w);
  }
  NormResult fwd = operator_norm(S);
  if (fwd.value > 1.0 + tol) {
    Eigen::VectorXd w = fwd.witness.size() ? fwd.witness : defect_witness(S);
    throw IsometryError("extend_isometry: norm exceeds one", w);
  }
  Operator Sinv(y, y, Eigen::MatrixXd(lu.inverse()));
  NormResult bwd = operator_norm(Sinv);
  if (bwd.value > 1.0 + tol) {
    // ||S^-1 w|| > 1 means S shrinks the unit vector S^-1 w / ||S^-1 w||.
    Eigen::VectorXd w = bwd.witness.size() ? bwd.witness : defect_witness(Sinv);
    Eigen::VectorXd pre = Sinv.real() * w;
    pre /= space_norm(y, pre);
    throw IsometryError("extend_isometry: inverse norm exceeds one", pre);
  }

  Space x = l1_sum({y, z});
  const int ny = y.dim(), nz = z.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ny + nz, ny + nz);
  m.topLeftCorner(ny, ny) = S.real();
  m.bottomRightCorner(nz, nz).setIdentity();
  return Operator(x, x, std::move(m), "isometric_extension");
}

}  // namespace banachlab
