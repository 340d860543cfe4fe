#pragma once

#include <array>

#include "rankgap/torus_bundle.hpp"

namespace rankgap {

// Coprime positive periods (m, n) with the canonical solution of
// m*c + n*d = 1 satisfying 0 <= d < m.
struct BezoutPair {
  long m = 0, n = 0;
  long c = 0, d = 0;
};

// Extended Euclid plus the canonical-range shift. Throws NotCoprime.
BezoutPair bezout(long m, long n);

// The Z^2 basis {lambda, mu} = {(m,n), (-d,c)} that rebases the product
// action: the lambda generator acts trivially on the fibers (A^m = B^n = I),
// the mu generator acts by (A^{-d}, B^{c}).
struct BasisChange {
  std::array<long, 2> lambda;
  std::array<long, 2> mu;

  IntMat basis_matrix() const;  // rows lambda, mu; determinant +1
};

BasisChange rebase_action(const BezoutPair& pair);

// M(f) x M(g) realized as the single mapping torus M(h) over T^{k+r+1},
// h = blockdiag(1, A^{-d}, B^{c}) in coordinates (circle, x, y).
// Every invariant is verified exactly before the value is returned:
//   h^{m-n} = blockdiag(1, A, B), m*c + n*d = 1, det[[m,n],[-d,c]] = 1,
//   and h != I unless both factors are trivial.
struct ProductDecomposition {
  TorusAutomorphism a;
  TorusAutomorphism b;
  BezoutPair bezout;
  TorusAutomorphism h;
  bool check_bezout = false;
  bool check_h_power = false;
  bool check_basis_unimodular = false;

  bool all_checks() const {
    return check_bezout && check_h_power && check_basis_unimodular;
  }
};

// Throws InfiniteOrder if either factor is aperiodic, PeriodsNotCoprime if
// gcd(m,n) != 1. Degenerate periods m = 1 or n = 1 are accepted.
ProductDecomposition decompose(const TorusAutomorphism& a, const TorusAutomorphism& b);

struct RankGap {
  int rank_product = 0;  // rank of M(h)
  int rank_a = 0;
  int rank_b = 0;
  int gap = 0;  // rank_product - rank_a - rank_b; 1 iff both factors nontrivial
};

RankGap rank_gap(const TorusAutomorphism& a, const TorusAutomorphism& b);

// blockdiag(1, x, y) with a leading 1x1 identity block for the circle factor.
IntMat block_diag_one(const IntMat& x, const IntMat& y);

}  // namespace rankgap
