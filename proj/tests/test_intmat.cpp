#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "rankgap/errors.hpp"
#include "rankgap/intmat.hpp"
#include "rankgap/parse.hpp"

using namespace rankgap;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  const Index n = static_cast<Index>(rows.size());
  IntMat m(n, static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// independent oracle: determinant by signed permutation expansion, for
// matrices small enough that long long cannot overflow
long long det_by_permutations(const IntMat& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    long long term = (inversions % 2 == 0) ? 1 : -1;
    for (int i = 0; i < n; ++i) term *= a(i, perm[i]).get_si();
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// independent oracle for 2x2 invariant factors: determinantal divisors
// d1 = gcd of the entries, d2 = |det| / d1
std::vector<long long> invariant_factors_2x2(const IntMat& a) {
  long long g = 0;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) g = std::gcd(g, a(i, j).get_si());
  const long long d = std::abs(det(a).get_si());
  if (g == 0) return {0, 0};
  return {g, d / g};
}

// every unimodular 2x2 matrix with entries in [-bound, bound]
std::vector<IntMat> unimodular_pool(long bound) {
  std::vector<IntMat> pool;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c)
        for (long d = -bound; d <= bound; ++d) {
          IntMat m = mat({{a, b}, {c, d}});
          if (is_unimodular(m)) pool.push_back(std::move(m));
        }
  return pool;
}

}  // namespace

TEST_CASE("determinant matches the cofactor formula on the pinned cases") {
  auto cof = [](long a, long b, long c, long d) { return a * d - b * c; };
  CHECK(det(mat({{1, 0}, {0, 1}})) == 1);
  CHECK(cof(-1, 0, 0, -1) == 1);
  CHECK(det(mat({{-1, 0}, {0, -1}})) == 1);
  CHECK(cof(0, 1, -1, -1) == 1);
  CHECK(det(mat({{0, 1}, {-1, -1}})) == 1);
  CHECK(det(mat({{2, 0}, {0, 1}})) == 2);
}

TEST_CASE("determinant agrees with permutation expansion on random matrices") {
  std::mt19937 rng(802701);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int trial = 0; trial < 240; ++trial) {
    const int n = 1 + trial % 5;
    IntMat a(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = entry(rng);
    CHECK(det(a) == det_by_permutations(a));
  }
}

TEST_CASE("unimodularity") {
  CHECK_FALSE(is_unimodular(mat({{2, 0}, {0, 1}})));
  CHECK(is_unimodular(mat({{0, 1}, {-1, -1}})));
  for (int k = 1; k <= 4; ++k) CHECK(is_unimodular(IntMat::Identity(k, k)));
}

TEST_CASE("powers") {
  const IntMat b = mat({{0, 1}, {-1, -1}});
  CHECK(same_matrix(power(b, 3), IntMat::Identity(2, 2)));
  CHECK(same_matrix(power(b, 0), IntMat::Identity(2, 2)));
  const IntMat neg = mat({{-1, 0}, {0, -1}});
  CHECK(same_matrix(power(neg, -1), neg));  // an involution is its own inverse
  CHECK_THROWS_AS((void)power(mat({{2, 0}, {0, 1}}), -1), NonInvertible);
}

TEST_CASE("power is a homomorphism in the exponent") {
  const auto pool = unimodular_pool(2);
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<long> exponent(-8, 8);
  for (int trial = 0; trial < 120; ++trial) {
    const IntMat& a = pool[pick(rng)];
    const long e1 = exponent(rng), e2 = exponent(rng);
    CHECK(same_matrix(power(a, e1 + e2), power(a, e1) * power(a, e2)));
  }
}

TEST_CASE("orders of the pinned examples") {
  CHECK(order(mat({{-1, 0}, {0, -1}}), 24) == MatrixOrder::finite(2));
  CHECK(order(mat({{0, 1}, {-1, -1}}), 24) == MatrixOrder::finite(3));
  CHECK(order(mat({{0, 1}, {-1, 0}}), 24) == MatrixOrder::finite(4));
  CHECK(order(mat({{1}}), 24) == MatrixOrder::finite(1));
  CHECK(order(mat({{-1}}), 24) == MatrixOrder::finite(2));
  // 3-cycle permutation matrix
  CHECK(order(mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), 24) == MatrixOrder::finite(3));
}

TEST_CASE("hyperbolic and unipotent matrices have infinite order") {
  const IntMat hyper = mat({{2, 1}, {1, 1}});
  CHECK_FALSE(order(hyper, 24).is_finite());
  // direct iteration oracle for the same verdict
  IntMat p = hyper;
  for (int m = 1; m <= 24; ++m) {
    CHECK_FALSE(same_matrix(p, IntMat::Identity(2, 2)));
    p = (p * hyper).eval();
  }
  CHECK_FALSE(order(mat({{1, 1}, {0, 1}}), 24).is_finite());
  CHECK_FALSE(order(mat({{-1, 1}, {0, -1}}), 24).is_finite());
  CHECK_FALSE(order(mat({{2, 1}, {1, 1}}), 200).is_finite());
}

TEST_CASE("order errors") {
  CHECK_THROWS_AS((void)order(mat({{2, 0}, {0, 1}}), 24), NonInvertible);
  // cap below the true finite order must refuse, not report Infinite
  CHECK_THROWS_AS((void)order(mat({{0, 1}, {-1, -1}}), 2), OrderCapTooSmall);
  CHECK_THROWS_AS((void)order(mat({{-1}}), 1), OrderCapTooSmall);
}

TEST_CASE("order and power round-trip over an exhaustive pool") {
  for (const IntMat& a : unimodular_pool(2)) {
    const MatrixOrder ord = order(a, 24);
    if (!ord.is_finite()) continue;
    const long m = ord.value();
    CHECK(same_matrix(power(a, m), IntMat::Identity(2, 2)));
    for (long j = 1; j < m; ++j)
      CHECK_FALSE(same_matrix(power(a, j), IntMat::Identity(2, 2)));
  }
}

TEST_CASE("finite orders in GL(2,Z) obey the crystallographic restriction") {
  std::vector<long> seen;
  for (const IntMat& a : unimodular_pool(2)) {
    const MatrixOrder ord = order(a, 24);
    if (ord.is_finite()) seen.push_back(ord.value());
  }
  for (long m : seen)
    CHECK((m == 1 || m == 2 || m == 3 || m == 4 || m == 6));
  for (long m : {1L, 2L, 3L, 4L, 6L})
    CHECK(std::count(seen.begin(), seen.end(), m) > 0);
}

TEST_CASE("Smith normal form of the pinned cases") {
  auto diag_si = [](const SmithNormalForm& s) {
    std::vector<long long> out;
    for (const Int& d : s.diagonal) out.push_back(d.get_si());
    return out;
  };
  CHECK(diag_si(smith_normal_form(IntMat(IntMat::Identity(2, 2)))) ==
        std::vector<long long>{1, 1});
  CHECK(diag_si(smith_normal_form(mat({{-1, 1}, {-1, -2}}))) ==
        std::vector<long long>{1, 3});
  CHECK(diag_si(smith_normal_form(mat({{0, 0}, {0, 0}}))) ==
        std::vector<long long>{0, 0});
}

TEST_CASE("Smith transforms are unimodular and reproduce the diagonal") {
  std::mt19937 rng(271828);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 2;
    IntMat a(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = entry(rng);
    const SmithNormalForm snf = smith_normal_form(a);

    IntMat diag = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i) diag(i, i) = snf.diagonal[static_cast<std::size_t>(i)];
    CHECK(same_matrix(snf.left * a * snf.right, diag));
    CHECK(is_unimodular(snf.left));
    CHECK(is_unimodular(snf.right));
    for (std::size_t i = 0; i + 1 < snf.diagonal.size(); ++i) {
      CHECK(snf.diagonal[i] >= 0);
      if (snf.diagonal[i] != 0)
        CHECK(snf.diagonal[i + 1] % snf.diagonal[i] == 0);
      else
        CHECK(snf.diagonal[i + 1] == 0);
    }
  }
}

TEST_CASE("Smith diagonal matches the determinantal-divisor oracle on 2x2") {
  std::mt19937 rng(314159);
  std::uniform_int_distribution<long> entry(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    IntMat a(2, 2);
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) a(i, j) = entry(rng);
    const SmithNormalForm snf = smith_normal_form(a);
    const auto expected = invariant_factors_2x2(a);
    REQUIRE(snf.diagonal.size() == 2);
    CHECK(snf.diagonal[0].get_si() == expected[0]);
    CHECK(snf.diagonal[1].get_si() == expected[1]);
  }
}

TEST_CASE("matrix literals parse in both formats") {
  const IntMat b = mat({{0, 1}, {-1, -1}});
  CHECK(same_matrix(parse_matrix("[[0,1],[-1,-1]]"), b));
  CHECK(same_matrix(parse_matrix("0 1; -1 -1"), b));
  CHECK(same_matrix(parse_matrix("  [[0, 1] , [-1, -1]]  "), b));
  CHECK(same_matrix(parse_matrix("[-1]"), mat({{-1}})));
  CHECK(same_matrix(parse_matrix("-1"), mat({{-1}})));
  CHECK(format_matrix(b) == "[[0,1],[-1,-1]]");
  CHECK(same_matrix(parse_matrix(format_matrix(b)), b));
}

TEST_CASE("oversized entries survive the text form exactly") {
  const IntMat big = parse_matrix("123456789012345678901234567890 0; 0 1");
  CHECK(big(0, 0) == Int("123456789012345678901234567890"));
  CHECK(parse_matrix(format_matrix(big))(0, 0) == big(0, 0));
}

TEST_CASE("malformed literals are rejected") {
  CHECK_THROWS_AS((void)parse_matrix(""), ParseError);
  CHECK_THROWS_AS((void)parse_matrix("[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS((void)parse_matrix("[[1,2]]"), ParseError);        // not square
  CHECK_THROWS_AS((void)parse_matrix("[[1,2],[3,x]]"), ParseError);
  CHECK_THROWS_AS((void)parse_matrix("1 2; 3"), ParseError);
  CHECK_THROWS_AS((void)parse_matrix("[[1.5,0],[0,1]]"), ParseError);
  CHECK_THROWS_AS((void)parse_matrix("nonsense"), ParseError);
}
