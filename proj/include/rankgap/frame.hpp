#pragma once

#include <functional>
#include <vector>

#include "rankgap/numeric.hpp"

namespace rankgap {

// C-infinity step: 0 on [0,a], 1 on [b,1], strictly increasing in between,
// with all derivatives vanishing at a and b. Built from the symmetric
// exp(-1/x) quotient bump, so sigma((a+b)/2) = 1/2 exactly.
class SmoothStep {
 public:
  SmoothStep(double a, double b);  // throws BadInterval unless 0 < a < b < 1

  double operator()(double t) const;
  double derivative(double t) const;
  double lower() const { return a_; }
  double upper() const { return b_; }

 private:
  double a_, b_;
};

// Smooth flip rho: [0,1/2] -> [-1,1] with rho = 1 on [0,c] and rho = -1 on
// [d,1/2], infinitely flat at c and d.
class FlipProfile {
 public:
  FlipProfile(double c, double d);  // throws BadInterval unless 0 < c < d < 1/2

  double operator()(double t) const { return 1.0 - 2.0 * step_(t); }
  double derivative(double t) const { return -2.0 * step_.derivative(t); }
  double lower() const { return step_.lower(); }
  double upper() const { return step_.upper(); }

 private:
  SmoothStep step_;
};

// Smooth path Phi: [0,1] -> GL+(k,R) with Phi(0) = I and Phi(1) = target,
// constant near the endpoints. The path is
//     Phi(t) = exp(sigma(t) log Q) * exp(sigma(t) log P)
// for the polar decomposition target = Q * P (Q special orthogonal, P
// symmetric positive definite), so det Phi(t) > 0 throughout. The rotation
// logarithm is taken through the real Schur form; minus-one eigenvalue
// pairs are joined into half-turn planes in Schur order, which fixes the
// angle-pi branch deterministically.
class GlPlusPath {
 public:
  GlPlusPath(RealMat target, SmoothStep step);  // throws NegativeDeterminant, LogFailure

  RealMat operator()(double t) const { return at_parameter(step_(t)); }
  RealMat derivative(double t) const {
    return step_.derivative(t) * parameter_derivative(step_(t));
  }

  // exp(s log Q) exp(s log P) and its s-derivative
  RealMat at_parameter(double s) const;
  RealMat parameter_derivative(double s) const;

  const RealMat& target() const { return target_; }
  const SmoothStep& step() const { return step_; }

 private:
  struct RotationPlane {
    Index i, j;
    double angle;
  };

  RealMat rotation_pow(double s) const;
  RealMat rotation_pow_derivative(double s) const;
  RealMat spd_pow(double s) const;
  RealMat spd_pow_derivative(double s) const;

  RealMat target_;
  SmoothStep step_;
  RealMat rot_basis_;  // orthogonal W with Q = W * (plane rotations) * W^T
  std::vector<RotationPlane> planes_;
  RealMat spd_basis_;  // V with P = V * diag(sigma) * V^T
  RealVec spd_log_;    // log of the singular values
};

// Time-dependent coefficients of k vector fields on [0,1] x T^k:
//   X~_i(t, theta) = sum_j phi_ij(t) d/dtheta_j + tau_i(t) d/dt.
// A valid frame has phi(0) = I, phi(1) = monodromy, tau(0) = tau(1) = 0,
// all t-derivatives flat at the endpoints, at most one index with tau != 0
// (and the other rows locally constant there), and [phi|tau] of full rank
// for every t. phi_prime/tau_prime are the exact derivatives.
struct CoefficientFrame {
  int k = 0;
  IntMat monodromy;
  std::function<RealMat(double)> phi;
  std::function<RealVec(double)> tau;
  std::function<RealMat(double)> phi_prime;
  std::function<RealVec(double)> tau_prime;
  // length of the guaranteed-constant zones at t = 0 and t = 1 (used to
  // place one-sided flatness stencils); 0 when unknown
  double flat_margin_start = 0.0;
  double flat_margin_end = 0.0;
};

struct FrameOptions {
  double step_lo = 0.25;   // smooth-step support (a, b) in (0,1)
  double step_hi = 0.75;
  double flip_lo = 0.125;  // flip support (c, d) in (0, 1/2)
  double flip_hi = 0.375;
};

// Frame realizing the gluing for f induced by A in GL(k,Z). det A = +1
// gives a single GL+ path with tau = 0. det A = -1 runs two phases: first
// the flip rho on row 1, trading d/dtheta_1 against d/dt on [0,1/2]; then a
// GL+ path from diag(-1,1,...,1) to A on [1/2,1] (the rebased target A*D
// has positive determinant, which is asserted). Throws NotUnimodular.
CoefficientFrame build_frame(const IntMat& a, const FrameOptions& options = {});

// Coefficients of the bracket [X~_i, X~_l] at time t, as a length-(k+1)
// vector (k theta-components, then the t-component). Since all coefficients
// depend on t alone and the base fields commute,
//   [X~_i, X~_l] = sum_j (tau_i phi'_lj - tau_l phi'_ij) d/dtheta_j
//                  + (tau_i tau'_l - tau_l tau'_i) d/dt.
RealVec bracket_coefficients(const CoefficientFrame& f, int i, int l, double t);

// Same bracket with phi', tau' estimated by central differences of the
// frame evaluators (independent of the stored analytic derivatives).
RealVec bracket_coefficients_fd(const CoefficientFrame& f, int i, int l, double t,
                                double h = 1e-5);

struct FrameReport {
  double bracket_max = 0.0;    // max bracket coefficient norm over grid/pairs
  double gram_min = 0.0;       // min over grid of sqrt det([phi|tau][phi|tau]^T)
  double seam_phi_start = 0.0; // ||phi(0) - I||_F
  double seam_phi_end = 0.0;   // ||phi(1) - A||_F
  double seam_tau_start = 0.0; // |tau(0)|
  double seam_tau_end = 0.0;   // |tau(1)|
  double flat_d1 = 0.0;        // one-sided derivative residuals at t in {0,1}
  double flat_d2 = 0.0;
  double flat_d3 = 0.0;
  bool pass = false;
  int grid_n = 0;
  double tol = 0.0;
};

// Scans a uniform t-grid (grid_n points, endpoints included) and reports
// commutation, independence, seam, and flatness residuals. pass requires
// every residual <= tol and gram_min > 0.
FrameReport verify_frame(const CoefficientFrame& f, int grid_n, double tol);

// q-fold pass around the base circle at coefficient level: segment j
// carries phi(s) * A^j. The endpoint coefficient matrix is A^q.
CoefficientFrame concatenate(const CoefficientFrame& f, int q);

}  // namespace rankgap
