#include "rankgap/search.hpp"

#include <numeric>
#include <stdexcept>

#include "rankgap/errors.hpp"

namespace rankgap {
namespace {

bool crystallographic_period(long p) {
  return p == 1 || p == 2 || p == 3 || p == 4 || p == 6;
}

}  // namespace

std::vector<FiniteOrderElement> enumerate_finite_order(const SearchConfig& cfg) {
  if (cfg.dim < 1) throw Error("search dimension must be >= 1");
  if (cfg.entry_bound < 1) throw Error("entry bound must be >= 1");
  if (cfg.order_cap < 6) throw Error("order cap must be >= 6");

  const int k = cfg.dim;
  const long bound = cfg.entry_bound;
  const int cells = k * k;

  std::vector<long> entries(static_cast<std::size_t>(cells), -bound);
  std::vector<FiniteOrderElement> out;
  for (;;) {
    IntMat m(k, k);
    for (int idx = 0; idx < cells; ++idx)
      m(idx / k, idx % k) = entries[static_cast<std::size_t>(idx)];
    if (is_unimodular(m)) {
      const MatrixOrder ord = order(m, cfg.order_cap);
      if (ord.is_finite()) {
        if (k == 2 && !crystallographic_period(ord.value()))
          throw std::logic_error("finite order outside {1,2,3,4,6} found in GL(2,Z)");
        out.push_back({std::move(m), ord.value()});
      }
    }
    // odometer step, most significant cell first => lexicographic output
    int idx = cells - 1;
    while (idx >= 0 && entries[static_cast<std::size_t>(idx)] == bound) {
      entries[static_cast<std::size_t>(idx)] = -bound;
      --idx;
    }
    if (idx < 0) break;
    ++entries[static_cast<std::size_t>(idx)];
  }
  return out;
}

CounterexampleCertificate certify_pair(const TorusAutomorphism& a,
                                       const TorusAutomorphism& b) {
  const ProductDecomposition dec = decompose(a, b);
  const RankGap gap = rank_gap(a, b);

  CounterexampleCertificate cert;
  cert.a = a.matrix();
  cert.b = b.matrix();
  cert.h = dec.h.matrix();
  cert.m = dec.bezout.m;
  cert.n = dec.bezout.n;
  cert.c = dec.bezout.c;
  cert.d = dec.bezout.d;
  cert.rank_product = gap.rank_product;
  cert.rank_a = gap.rank_a;
  cert.rank_b = gap.rank_b;
  cert.gap = gap.gap;
  cert.orientable_a = is_orientable(MappingTorusDescriptor{a});
  cert.orientable_b = is_orientable(MappingTorusDescriptor{b});
  // re-verify the exact identities independently of decompose's own checks
  cert.check_bezout = static_cast<long long>(cert.m) * cert.c +
                          static_cast<long long>(cert.n) * cert.d ==
                      1;
  cert.check_h_power = same_matrix(power(cert.h, cert.m - cert.n),
                                   block_diag_one(cert.a, cert.b));
  cert.check_basis_unimodular =
      det(rebase_action(dec.bezout).basis_matrix()) == 1;
  return cert;
}

std::vector<CounterexampleCertificate> find_counterexamples(const SearchConfig& cfg,
                                                            std::size_t limit) {
  // one element list per fiber dimension 1..dim
  std::vector<std::vector<FiniteOrderElement>> by_dim;
  for (int k = 1; k <= cfg.dim; ++k) {
    SearchConfig sub = cfg;
    sub.dim = k;
    by_dim.push_back(enumerate_finite_order(sub));
  }

  std::vector<CounterexampleCertificate> out;
  auto consider = [&](const FiniteOrderElement& ea, const FiniteOrderElement& eb) {
    if (out.size() >= limit) return;
    long m = ea.period, n = eb.period;
    if (m <= 1 || n <= 1 || std::gcd(m, n) != 1) return;
    const FiniteOrderElement* first = &ea;
    const FiniteOrderElement* second = &eb;
    if (cfg.require_periods) {
      const auto [pm, pn] = *cfg.require_periods;
      if (m == pm && n == pn) {
        // already oriented
      } else if (m == pn && n == pm) {
        std::swap(first, second);
      } else {
        return;
      }
    }
    if (cfg.require_orientable &&
        (det(first->matrix) != 1 || det(second->matrix) != 1))
      return;
    out.push_back(certify_pair(TorusAutomorphism(first->matrix, cfg.order_cap),
                               TorusAutomorphism(second->matrix, cfg.order_cap)));
    if (!out.back().verified())
      throw std::logic_error("search produced an unverified certificate");
  };

  for (std::size_t da = 0; da < by_dim.size() && out.size() < limit; ++da) {
    for (std::size_t db = da; db < by_dim.size() && out.size() < limit; ++db) {
      const auto& list_a = by_dim[da];
      const auto& list_b = by_dim[db];
      for (std::size_t ia = 0; ia < list_a.size() && out.size() < limit; ++ia) {
        const std::size_t jb_start = (da == db) ? ia + 1 : 0;
        for (std::size_t ib = jb_start; ib < list_b.size() && out.size() < limit; ++ib)
          consider(list_a[ia], list_b[ib]);
      }
    }
  }
  return out;
}

}  // namespace rankgap
