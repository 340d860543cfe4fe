#pragma once

#include <vector>

#include "rankgap/intmat.hpp"
#include "rankgap/numeric.hpp"

namespace rankgap {

// f: T^k -> T^k induced by an element of GL(k,Z). Construction validates
// unimodularity and caches the matrix order (up to order_cap).
class TorusAutomorphism {
 public:
  explicit TorusAutomorphism(IntMat matrix, long order_cap = kDefaultOrderCap);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const IntMat& matrix() const { return matrix_; }
  const MatrixOrder& order() const { return order_; }
  bool is_identity() const { return rankgap::is_identity(matrix_); }

 private:
  IntMat matrix_;
  MatrixOrder order_;
};

// M(f) = ([0,1] x T^k) / ((0,x) ~ (1,f(x))): a T^k-bundle over the circle,
// represented purely by its monodromy.
struct MappingTorusDescriptor {
  TorusAutomorphism fiber;

  int total_dim() const { return fiber.dim() + 1; }
};

// pi_1(M(f)) = Z^k x|_A Z (semidirect product), with abelianization
// Z + coker(A - I).
struct Pi1Data {
  int fiber_rank = 0;
  IntMat monodromy;
  int free_rank = 0;         // Z-rank of the abelianization
  std::vector<Int> torsion;  // invariant factors > 1, ascending

  bool abelian() const { return rankgap::is_identity(monodromy); }
};

Pi1Data pi1(const MappingTorusDescriptor& m);

// True iff the monodromy is the identity, in which case M(f) is the
// (k+1)-torus. Otherwise pi_1 is non-abelian and M(f) is not a torus.
bool is_torus(const MappingTorusDescriptor& m);

// True iff the monodromy preserves fiber orientation (det = +1).
bool is_orientable(const MappingTorusDescriptor& m);

enum class RankJustification {
  kTorus,       // exact: the bundle is the (k+1)-torus, rank = dimension
  kFrameBound,  // lower bound k from a commuting frame, upper bound k from
                // non-torus rigidity (a closed n-manifold of rank n is T^n)
};

struct ManifoldRank {
  int value = 0;
  RankJustification justification = RankJustification::kFrameBound;
};

// Maximal number of commuting, everywhere-independent vector fields on
// M(f): k+1 when the monodromy is trivial, k otherwise.
ManifoldRank rank(const MappingTorusDescriptor& m);

}  // namespace rankgap
