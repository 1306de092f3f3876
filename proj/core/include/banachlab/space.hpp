#pragma once

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace banachlab {

enum class Field { Real, Complex };
enum class SumKind { L1, Linf };

class Space;

// l_p^n for p in [1, inf]; p = infinity() encodes the sup norm.
struct LpDesc {
  double p = 2.0;
  int dim = 1;
};

// Norm whose unit ball is the convex hull of the given vertex columns.
// make_space symmetrizes, deduplicates and hull-reduces the list.  Real only.
struct PolyhedralDesc {
  Eigen::MatrixXd vertices;  // dim x count
};

// l1 or sup direct sum of finitely many spaces over the same field.
struct SumDesc {
  SumKind kind = SumKind::L1;
  std::vector<Space> parts;
};

// Subspace of sup-norm functions on a finite node set, spanned by the basis
// columns; a vector of coefficients c has norm max_t |(basis * c)(t)|.
// Real only.
struct SupSubspaceDesc {
  std::vector<double> nodes;  // node positions, size == basis.rows()
  Eigen::MatrixXd basis;      // nodes x dim
};

using Descriptor =
    std::variant<LpDesc, PolyhedralDesc, SumDesc, SupSubspaceDesc>;

inline double lp_infinity() { return std::numeric_limits<double>::infinity(); }

namespace detail {
struct SpaceImpl;
struct Node;
}  // namespace detail

class Space {
 public:
  Space() = default;
  bool valid() const { return impl_ != nullptr; }
  int dim() const;
  Field field() const;
  const Descriptor& desc() const;

  // Engine view; internal, stable for the lifetime of the space.
  const detail::Node& node() const;

 private:
  friend Space make_space(Field field, Descriptor desc);
  std::shared_ptr<const detail::SpaceImpl> impl_;
};

// Validates and canonicalizes a descriptor.  Throws ConstructionError on
// degenerate input (rank-deficient vertex sets or bases, empty sums, complex
// fields on real-only descriptors, p outside [1, inf]).
Space make_space(Field field, Descriptor desc);

// Convenience constructors.
Space lp_space(Field field, double p, int dim);
Space polyhedral_space(const Eigen::MatrixXd& vertices);
Space sup_subspace(std::vector<double> nodes, const Eigen::MatrixXd& basis);

double space_norm(const Space& s, const Eigen::VectorXd& x);
double space_norm(const Space& s, const Eigen::VectorXcd& x);

// Norm of the dual space applied to a functional in coordinates.
double dual_norm(const Space& s, const Eigen::VectorXd& f);

Space dual_space(const Space& s);

// Extreme points of the unit ball; CapabilityError for descriptors without a
// finite extreme set (l_p with p not in {1, inf} of dimension >= 2) or when
// the enumeration would exceed its budget.
std::vector<Eigen::VectorXd> extreme_points(const Space& s);

struct DualityPair {
  Eigen::VectorXcd x;
  Eigen::VectorXcd xstar;
};

struct PairEnumeration {
  std::vector<DualityPair> pairs;
  bool exact = false;
  double tol_pair = 1e-9;
};

// Normalized pairs (x, x*) with x*(x) = 1.  Exact finite enumeration for
// polytope-like spaces; deterministic sampled families otherwise.  Extra
// caller-supplied unit vectors are normed and appended in sampled modes.
PairEnumeration duality_pairs(const Space& s, int budget,
                              const std::vector<Eigen::VectorXcd>& extra = {});

bool approx_equal(const Space& a, const Space& b, double tol);

std::string describe(const Space& s);

}  // namespace banachlab
