#include "rankgap/torus_bundle.hpp"

#include <algorithm>
#include <utility>

#include "rankgap/errors.hpp"

namespace rankgap {

TorusAutomorphism::TorusAutomorphism(IntMat matrix, long order_cap)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols())
    throw NotUnimodular("torus automorphism needs a square matrix of dimension >= 1");
  if (!is_unimodular(matrix_))
    throw NotUnimodular("matrix is not in GL(k,Z): det = " + det(matrix_).get_str());
  order_ = rankgap::order(matrix_, order_cap);
}

Pi1Data pi1(const MappingTorusDescriptor& m) {
  const IntMat& a = m.fiber.matrix();
  const Index k = a.rows();
  const IntMat rel = a - IntMat::Identity(k, k);
  const SmithNormalForm snf = smith_normal_form(rel);

  Pi1Data out;
  out.fiber_rank = static_cast<int>(k);
  out.monodromy = a;
  out.free_rank = 1;  // the base-circle generator
  for (const Int& d : snf.diagonal) {
    if (d == 0)
      ++out.free_rank;
    else if (d > 1)
      out.torsion.push_back(d);
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

bool is_torus(const MappingTorusDescriptor& m) { return m.fiber.is_identity(); }

bool is_orientable(const MappingTorusDescriptor& m) {
  return det(m.fiber.matrix()) == 1;
}

ManifoldRank rank(const MappingTorusDescriptor& m) {
  if (is_torus(m)) return {m.total_dim(), RankJustification::kTorus};
  return {m.fiber.dim(), RankJustification::kFrameBound};
}

}  // namespace rankgap
