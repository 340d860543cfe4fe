#include "rankgap/product_theorem.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "rankgap/errors.hpp"

namespace rankgap {

BezoutPair bezout(long m, long n) {
  if (m < 1 || n < 1) throw NotCoprime("periods must be positive");
  if (std::gcd(m, n) != 1)
    throw NotCoprime("periods " + std::to_string(m) + " and " + std::to_string(n) +
                     " are not coprime (gcd " + std::to_string(std::gcd(m, n)) + ")");

  // iterative extended Euclid: old_s*m + old_t*n = gcd = 1
  long long old_r = m, r = n;
  long long old_s = 1, s = 0;
  long long old_t = 0, t = 1;
  while (r != 0) {
    const long long q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  // shift d into the canonical range [0, m)
  const long long d = ((old_t % m) + m) % m;
  const long long c = (1 - static_cast<long long>(n) * d) / m;
  if (m * c + n * d != 1)
    throw std::logic_error("bezout: canonical pair failed its identity check");
  return {m, n, static_cast<long>(c), static_cast<long>(d)};
}

IntMat BasisChange::basis_matrix() const {
  IntMat b(2, 2);
  b(0, 0) = lambda[0];
  b(0, 1) = lambda[1];
  b(1, 0) = mu[0];
  b(1, 1) = mu[1];
  return b;
}

BasisChange rebase_action(const BezoutPair& pair) {
  return {{pair.m, pair.n}, {-pair.d, pair.c}};
}

IntMat block_diag_one(const IntMat& x, const IntMat& y) {
  const Index k = x.rows();
  const Index r = y.rows();
  IntMat h = IntMat::Zero(1 + k + r, 1 + k + r);
  h(0, 0) = 1;
  h.block(1, 1, k, k) = x;
  h.block(1 + k, 1 + k, r, r) = y;
  return h;
}

ProductDecomposition decompose(const TorusAutomorphism& a, const TorusAutomorphism& b) {
  if (!a.order().is_finite() || !b.order().is_finite())
    throw InfiniteOrder("both factors must be periodic; got an infinite-order monodromy");
  const long m = a.order().value();
  const long n = b.order().value();
  if (std::gcd(m, n) != 1)
    throw PeriodsNotCoprime("periods " + std::to_string(m) + " and " + std::to_string(n) +
                            " are not coprime");

  const BezoutPair bz = bezout(m, n);
  const IntMat h_mat = block_diag_one(power(a.matrix(), -bz.d), power(b.matrix(), bz.c));

  // exact self-checks before the decomposition is published
  const bool ok_bezout =
      static_cast<long long>(m) * bz.c + static_cast<long long>(n) * bz.d == 1;
  const bool ok_power =
      same_matrix(power(h_mat, m - n), block_diag_one(a.matrix(), b.matrix()));
  const bool ok_basis = det(rebase_action(bz).basis_matrix()) == 1;
  const bool ok_nontrivial =
      (a.is_identity() && b.is_identity()) || !is_identity(h_mat);
  if (!(ok_bezout && ok_power && ok_basis && ok_nontrivial))
    throw std::logic_error("product decomposition failed an exact self-check");

  const long h_cap = std::max(kDefaultOrderCap, m * n);
  return {a, b, bz, TorusAutomorphism(h_mat, h_cap), ok_bezout, ok_power, ok_basis};
}

RankGap rank_gap(const TorusAutomorphism& a, const TorusAutomorphism& b) {
  const ProductDecomposition dec = decompose(a, b);
  const int rank_product = rank(MappingTorusDescriptor{dec.h}).value;
  const int rank_a = rank(MappingTorusDescriptor{a}).value;
  const int rank_b = rank(MappingTorusDescriptor{b}).value;
  return {rank_product, rank_a, rank_b, rank_product - rank_a - rank_b};
}

}  // namespace rankgap
