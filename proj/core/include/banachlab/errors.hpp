#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace banachlab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid descriptor or argument while constructing a space/operator.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Shape mismatch between an operator and a space.
class DimensionError : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

// The requested computation is not supported for this space kind, or an
// enumeration would exceed its combinatorial budget.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A verification-style operation detected a genuine violation.
class CheckError : public Error {
 public:
  using Error::Error;
};

// Malformed input (CLI arguments, JSON files).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Precondition "S is an isometry" failed; carries a unit vector whose norm
// is not preserved.
class IsometryError : public Error {
 public:
  IsometryError(const std::string& msg, Eigen::VectorXd witness)
      : Error(msg), witness_(std::move(witness)) {}
  const Eigen::VectorXd& witness() const { return witness_; }

 private:
  Eigen::VectorXd witness_;
};

}  // namespace banachlab
