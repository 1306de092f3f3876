#pragma once

#include <string>
#include <variant>

#include <Eigen/Core>

#include "banachlab/space.hpp"

namespace banachlab {

class Operator {
 public:
  Operator() = default;
  Operator(Space domain, Space codomain, Eigen::MatrixXd m,
           std::string provenance = {});
  Operator(Space domain, Space codomain, Eigen::MatrixXcd m,
           std::string provenance = {});

  const Space& domain() const { return domain_; }
  const Space& codomain() const { return codomain_; }
  bool is_real() const {
    return std::holds_alternative<Eigen::MatrixXd>(matrix_);
  }
  const Eigen::MatrixXd& real() const {
    return std::get<Eigen::MatrixXd>(matrix_);
  }
  const Eigen::MatrixXcd& complex() const {
    return std::get<Eigen::MatrixXcd>(matrix_);
  }
  Eigen::MatrixXcd as_complex() const;
  const std::string& provenance() const { return provenance_; }
  bool endomorphism() const;

 private:
  Space domain_;
  Space codomain_;
  std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> matrix_;
  std::string provenance_;
};

Operator identity_operator(const Space& s);

// Adjoint between the dual spaces: the transpose over the reals and the
// conjugate transpose over the complex field.
Operator adjoint(const Operator& T);

Operator compose(const Operator& A, const Operator& B);  // A after B
Operator scale(const Operator& T, double a);
Operator add(const Operator& A, const Operator& B);

struct NormResult {
  double value = 0.0;
  bool exact = false;
  Eigen::VectorXd witness;  // empty when only the value is certified
};

NormResult operator_norm(const Operator& T, int budget = 64);

// Pade scaling-and-squaring exponential; `reduced` reports when the input
// norm is large enough that full double accuracy is no longer expected.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A, bool* reduced = nullptr);
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A, bool* reduced = nullptr);

// exp(t T) on the same space.
Operator exp_operator(const Operator& T, double t, bool* reduced = nullptr);

}  // namespace banachlab
