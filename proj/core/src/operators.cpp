#include "banachlab/operators.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "banachlab/engine.hpp"
#include "banachlab/errors.hpp"

namespace banachlab {

namespace {

void check_shape(const Space& domain, const Space& codomain, int rows,
                 int cols) {
  if (!domain.valid() || !codomain.valid())
    throw ConstructionError("operator needs valid spaces");
  if (rows != codomain.dim() || cols != domain.dim())
    throw DimensionError("operator shape does not match the spaces");
  if (domain.field() != codomain.field())
    throw ConstructionError("operator spaces must share the field");
}

}  // namespace

Operator::Operator(Space domain, Space codomain, Eigen::MatrixXd m,
                   std::string provenance)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      provenance_(std::move(provenance)) {
  check_shape(domain_, codomain_, static_cast<int>(m.rows()),
              static_cast<int>(m.cols()));
  if (domain_.field() == Field::Complex)
    matrix_ = Eigen::MatrixXcd(m.cast<std::complex<double>>());
  else
    matrix_ = std::move(m);
}

Operator::Operator(Space domain, Space codomain, Eigen::MatrixXcd m,
                   std::string provenance)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      provenance_(std::move(provenance)) {
  check_shape(domain_, codomain_, static_cast<int>(m.rows()),
              static_cast<int>(m.cols()));
  if (domain_.field() == Field::Real) {
    if (m.imag().cwiseAbs().maxCoeff() > 0)
      throw ConstructionError("complex matrix on a real space");
    matrix_ = Eigen::MatrixXd(m.real());
  } else {
    matrix_ = std::move(m);
  }
}

Eigen::MatrixXcd Operator::as_complex() const {
  if (is_real()) return real().cast<std::complex<double>>();
  return complex();
}

bool Operator::endomorphism() const {
  return approx_equal(domain_, codomain_, 0.0) ||
         approx_equal(domain_, codomain_, 1e-12);
}

Operator identity_operator(const Space& s) {
  if (s.field() == Field::Complex)
    return Operator(s, s, Eigen::MatrixXcd(
                              Eigen::MatrixXcd::Identity(s.dim(), s.dim())));
  return Operator(s, s,
                  Eigen::MatrixXd(Eigen::MatrixXd::Identity(s.dim(), s.dim())));
}

Operator adjoint(const Operator& T) {
  Space dom = dual_space(T.codomain());
  Space cod = dual_space(T.domain());
  if (T.is_real())
    return Operator(dom, cod, Eigen::MatrixXd(T.real().transpose()),
                    T.provenance());
  // Functionals pair sesquilinearly, so the adjoint matrix is the conjugate
  // transpose.
  return Operator(dom, cod, Eigen::MatrixXcd(T.complex().adjoint()),
                  T.provenance());
}

Operator compose(const Operator& A, const Operator& B) {
  if (!approx_equal(A.domain(), B.codomain(), 1e-12))
    throw ConstructionError("compose: spaces do not chain");
  if (A.is_real() && B.is_real())
    return Operator(B.domain(), A.codomain(),
                    Eigen::MatrixXd(A.real() * B.real()));
  return Operator(B.domain(), A.codomain(),
                  Eigen::MatrixXcd(A.as_complex() * B.as_complex()));
}

Operator scale(const Operator& T, double a) {
  if (T.is_real())
    return Operator(T.domain(), T.codomain(), Eigen::MatrixXd(a * T.real()));
  return Operator(T.domain(), T.codomain(), Eigen::MatrixXcd(a * T.complex()));
}

Operator add(const Operator& A, const Operator& B) {
  if (!approx_equal(A.domain(), B.domain(), 1e-12) ||
      !approx_equal(A.codomain(), B.codomain(), 1e-12))
    throw ConstructionError("add: space mismatch");
  if (A.is_real() && B.is_real())
    return Operator(A.domain(), A.codomain(),
                    Eigen::MatrixXd(A.real() + B.real()));
  return Operator(A.domain(), A.codomain(),
                  Eigen::MatrixXcd(A.as_complex() + B.as_complex()));
}

NormResult operator_norm(const Operator& T, int budget) {
  NormResult out;
  if (T.is_real()) {
    detail::OpNormResult r = detail::op_norm(T.domain().node(),
                                             T.codomain().node(), T.real(),
                                             budget);
    out.value = r.value;
    out.exact = r.exact;
    out.witness = r.wit_x;
    return out;
  }
  detail::OpNormResult r = detail::complex_op_norm(
      T.domain().node(), T.codomain().node(), T.complex(), budget);
  out.value = r.value;
  out.exact = r.exact;
  return out;
}

namespace {

// Higham-style scaling and squaring.
template <typename Mat>
Mat expm_impl(const Mat& A, bool* reduced) {
  using Real = double;
  const int n = static_cast<int>(A.rows());
  if (A.rows() != A.cols()) throw DimensionError("expm: square matrix needed");
  const Real eta = A.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  if (reduced) *reduced = eta > 100.0;

  static const Real theta3 = 1.495585217958292e-2;
  static const Real theta5 = 2.539398330063230e-1;
  static const Real theta7 = 9.504178996162932e-1;
  static const Real theta9 = 2.097847961257068;
  static const Real theta13 = 5.371920351148152;

  const Mat I = Mat::Identity(n, n);
  auto pade_solve = [&](const Mat& U, const Mat& V) -> Mat {
    return (V - U).partialPivLu().solve(V + U);
  };

  auto pade_small = [&](const Mat& X, const std::vector<Real>& b) -> Mat {
    const Mat X2 = X * X;
    Mat U = b[1] * I;
    Mat V = b[0] * I;
    Mat P = I;
    for (size_t k = 2; k < b.size(); k += 2) {
      P = P * X2;
      V += b[k] * P;
      if (k + 1 < b.size()) U += b[k + 1] * P;
    }
    U = X * U;
    return pade_solve(U, V);
  };

  if (eta <= theta3)
    return pade_small(A, {120, 60, 12, 1});
  if (eta <= theta5)
    return pade_small(A, {30240, 15120, 3360, 420, 30, 1});
  if (eta <= theta7)
    return pade_small(A, {17297280, 8648640, 1995840, 277200, 25200, 1512, 56,
                          1});
  if (eta <= theta9)
    return pade_small(A, {17643225600., 8821612800., 2075673600., 302702400.,
                          30270240., 2162160., 110880., 3960., 90., 1.});

  int s = 0;
  if (eta > theta13)
    s = static_cast<int>(std::ceil(std::log2(eta / theta13)));
  const Mat X = A / std::pow(2.0, s);

  static const Real b[14] = {64764752532480000., 32382376266240000.,
                             7771770303897600.,  1187353796428800.,
                             129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,
                             1323241920.,        40840800.,
                             960960.,            16380.,
                             182.,               1.};
  const Mat X2 = X * X;
  const Mat X4 = X2 * X2;
  const Mat X6 = X4 * X2;
  Mat U = X * (X6 * (b[13] * X6 + b[11] * X4 + b[9] * X2) + b[7] * X6 +
               b[5] * X4 + b[3] * X2 + b[1] * I);
  Mat V = X6 * (b[12] * X6 + b[10] * X4 + b[8] * X2) + b[6] * X6 + b[4] * X4 +
          b[2] * X2 + b[0] * I;
  Mat R = pade_solve(U, V);
  for (int i = 0; i < s; ++i) R = R * R;
  return R;
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& A, bool* reduced) {
  return expm_impl<Eigen::MatrixXd>(A, reduced);
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A, bool* reduced) {
  return expm_impl<Eigen::MatrixXcd>(A, reduced);
}

Operator exp_operator(const Operator& T, double t, bool* reduced) {
  if (!T.endomorphism())
    throw ConstructionError("exp_operator: endomorphism needed");
  if (T.is_real())
    return Operator(T.domain(), T.codomain(),
                    expm(Eigen::MatrixXd(t * T.real()), reduced));
  return Operator(T.domain(), T.codomain(),
                  expm(Eigen::MatrixXcd(t * T.complex()), reduced));
}

}  // namespace banachlab
