#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Core>

#include "banachlab/space.hpp"

// Internal evaluation engine.  Spaces normalize to a small set of node kinds
// with closed-form or LP-backed norm, dual-norm, operator-norm and numerical
// range routines.  Public modules should go through the wrappers in
// operators.hpp / numrange.hpp; this header is exposed for tests.

namespace banachlab::detail {

enum class NodeKind {
  L1Block,    // l1^n
  LinfBlock,  // linf^n
  Hilbert,    // l2^n
  LpGen,      // lp^n, p not in {1, 2, inf}; sampled routines
  VRep,       // ball = conv(+-V columns); V canonical
  HRep,       // ball = {x : |h^T x| <= 1 for h in H columns}
  SumL1,
  SumLinf,
};

struct Node {
  NodeKind kind = NodeKind::L1Block;
  int dim = 0;
  Field field = Field::Real;
  double p = 1.0;     // LpGen only
  Eigen::MatrixXd V;  // VRep (always), HRep (lazy via polar cache)
  Eigen::MatrixXd H;  // HRep (always), VRep (lazy via polar cache)
  std::vector<Node> parts;    // sums
  std::vector<int> offsets;   // part k occupies [offsets[k], offsets[k]+parts[k].dim)

  struct Cache {
    std::once_flag flag;
    Eigen::MatrixXd mat;
    bool failed = false;
  };
  std::shared_ptr<Cache> polar = std::make_shared<Cache>();

  Eigen::VectorXd segment_of(const Eigen::VectorXd& x, int k) const {
    return x.segment(offsets[k], parts[k].dim);
  }
};

Node normalize(const Space& s);
Node dual_node(const Node& n);

// H-rep normals of a VRep ball / vertices of an HRep ball; computed once,
// throws CapabilityError when the enumeration budget is exceeded.
const Eigen::MatrixXd& facet_normals(const Node& n);  // VRep
const Eigen::MatrixXd& hrep_vertices(const Node& n);  // HRep

double node_norm(const Node& n, const Eigen::VectorXd& x);
double node_norm(const Node& n, const Eigen::VectorXcd& x);
double node_dual_norm(const Node& n, const Eigen::VectorXd& f);

// A functional f with dual norm 1 and f(x) = ||x|| (any x != 0).
Eigen::VectorXd norming_functional(const Node& n, const Eigen::VectorXd& x);

std::vector<Eigen::VectorXd> node_extreme_points(const Node& n);

struct SupReResult {
  double value = 0.0;
  bool exact = false;
  Eigen::VectorXd wit_x;  // pair attaining (or approaching) the value
  Eigen::VectorXd wit_f;
};

// sup Re V(T) over the normalized space; T maps the node to itself.
SupReResult sup_re(const Node& n, const Eigen::MatrixXd& T, int budget = 64);

struct OpNormResult {
  double value = 0.0;
  bool exact = false;
  Eigen::VectorXd wit_x;  // unit vector attaining (or approaching) the norm
};

OpNormResult op_norm(const Node& dom, const Node& cod, const Eigen::MatrixXd& T,
                     int budget = 64);

// Complex spaces: only lp-type blocks are supported.  Functionals pair
// sesquilinearly: f(x) = sum_i x_i * conj(f_i).
double complex_sup_re(const Node& n, const Eigen::MatrixXcd& T, int budget = 64);

// Doubling theta-grid (64 .. 2^16) stopped at 1e-9 stabilization;
// `converged` reports whether the cap was hit first.
double complex_radius(const Node& n, const Eigen::MatrixXcd& T, int budget = 64,
                      bool* converged = nullptr);
OpNormResult complex_op_norm(const Node& dom, const Node& cod,
                             const Eigen::MatrixXcd& T, int budget = 64);

// Exact pair enumeration for polytope-like nodes (CapabilityError otherwise).
struct NodePairs {
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> f;
};
NodePairs node_pairs(const Node& n);

bool has_finite_pairs(const Node& n);

}  // namespace banachlab::detail
