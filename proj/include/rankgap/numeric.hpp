#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

namespace rankgap {

// Exact arbitrary-precision integer scalar. Powers of hyperbolic matrices
// overflow fixed-width integers quickly, so everything exact runs on this.
using Int = mpz_class;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMat = Mat<Int>;
using RealMat = Mat<double>;
using RealVec = Vec<double>;
using Index = Eigen::Index;

inline constexpr long kDefaultOrderCap = 24;

inline RealMat to_real(const IntMat& a) {
  RealMat out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).get_d();
  return out;
}

inline bool same_matrix(const IntMat& a, const IntMat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

inline bool is_identity(const IntMat& a) {
  return a.rows() == a.cols() && same_matrix(a, IntMat::Identity(a.rows(), a.cols()));
}

}  // namespace rankgap
