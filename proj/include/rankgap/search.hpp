#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rankgap/product_theorem.hpp"

namespace rankgap {

struct SearchConfig {
  int dim = 2;              // fiber dimension (counterexample search pairs 1..dim)
  long entry_bound = 3;     // entries scanned over [-entry_bound, entry_bound]
  long order_cap = 24;
  bool require_orientable = false;
  // when set, only pairs with exactly these periods are emitted, oriented
  // so the certificate's (m, n) equals the requested pair
  std::optional<std::pair<long, long>> require_periods;
};

struct FiniteOrderElement {
  IntMat matrix;
  long period = 0;
};

// Every finite-order element of GL(k,Z) with entries in [-B, B], in
// lexicographic entry order. For k = 2 the periods are checked against the
// crystallographic restriction {1,2,3,4,6}.
std::vector<FiniteOrderElement> enumerate_finite_order(const SearchConfig& cfg);

// A fully verified instance of rank(M(A) x M(B)) > rank M(A) + rank M(B).
struct CounterexampleCertificate {
  IntMat a, b, h;
  long m = 0, n = 0, c = 0, d = 0;
  int rank_product = 0, rank_a = 0, rank_b = 0, gap = 0;
  bool orientable_a = false, orientable_b = false;
  bool check_bezout = false, check_h_power = false, check_basis_unimodular = false;

  bool verified() const {
    return gap == 1 && check_bezout && check_h_power && check_basis_unimodular;
  }
};

// Decomposition + rank gap + exact re-verification for one ordered pair.
CounterexampleCertificate certify_pair(const TorusAutomorphism& a,
                                       const TorusAutomorphism& b);

// Scans pairs of finite-order elements (fiber dimensions 1..cfg.dim, entry
// bound cfg.entry_bound) with coprime periods m, n > 1 and emits up to
// `limit` verified certificates, deterministically ordered.
std::vector<CounterexampleCertificate> find_counterexamples(const SearchConfig& cfg,
                                                            std::size_t limit);

}  // namespace rankgap
