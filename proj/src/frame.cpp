#include "rankgap/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "rankgap/errors.hpp"
#include "rankgap/intmat.hpp"

namespace rankgap {
namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

RealMat flip_first_axis(Index k) {
  RealMat d = RealMat::Identity(k, k);
  d(0, 0) = -1.0;
  return d;
}

}  // namespace

SmoothStep::SmoothStep(double a, double b) : a_(a), b_(b) {
  if (!(0.0 < a && a < b && b < 1.0))
    throw BadInterval("smooth step needs 0 < a < b < 1");
}

double SmoothStep::operator()(double t) const {
  const double x = (t - a_) / (b_ - a_);
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double g0 = bump(x);
  const double g1 = bump(1.0 - x);
  return g0 / (g0 + g1);
}

double SmoothStep::derivative(double t) const {
  const double w = b_ - a_;
  const double x = (t - a_) / w;
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double g0 = bump(x);
  const double g1 = bump(1.0 - x);
  const double dg0 = g0 / (x * x);
  const double dg1 = -g1 / ((1.0 - x) * (1.0 - x));  // d/dx of bump(1-x)
  const double s = g0 + g1;
  return (dg0 * g1 - g0 * dg1) / (s * s) / w;
}

FlipProfile::FlipProfile(double c, double d) : step_(c, d) {
  if (!(d < 0.5)) throw BadInterval("flip profile needs 0 < c < d < 1/2");
}

GlPlusPath::GlPlusPath(RealMat target, SmoothStep step)
    : target_(std::move(target)), step_(step) {
  const Index n = target_.rows();
  if (n < 1 || target_.cols() != n)
    throw NegativeDeterminant("path target must be a square matrix");
  if (!(target_.determinant() > 0.0))
    throw NegativeDeterminant("path target must have positive determinant");

  // polar decomposition target = Q * P via the SVD
  Eigen::JacobiSVD<RealMat> svd(target_, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealMat rotation = svd.matrixU() * svd.matrixV().transpose();
  spd_basis_ = svd.matrixV();
  spd_log_ = svd.singularValues().array().log().matrix();

  // rotation logarithm through the real Schur form; for an orthogonal
  // matrix the quasi-triangular factor is block diagonal
  Eigen::RealSchur<RealMat> schur(rotation);
  const RealMat& t = schur.matrixT();
  rot_basis_ = schur.matrixU();
  std::vector<Index> half_turns;
  for (Index i = 0; i < n;) {
    const bool two_by_two = (i + 1 < n) && std::abs(t(i + 1, i)) > 1e-12;
    if (!two_by_two) {
      const double v = t(i, i);
      if (std::abs(v - 1.0) < 1e-9) {
        // fixed direction, no plane needed
      } else if (std::abs(v + 1.0) < 1e-9) {
        half_turns.push_back(i);
      } else {
        throw LogFailure("rotation factor has a real eigenvalue away from +-1");
      }
      ++i;
    } else {
      if (std::abs(t(i, i) - t(i + 1, i + 1)) > 1e-6 ||
          std::abs(t(i, i + 1) + t(i + 1, i)) > 1e-6)
        throw LogFailure("Schur block of the rotation factor is not a rotation");
      planes_.push_back({i, i + 1, std::atan2(t(i + 1, i), t(i, i))});
      i += 2;
    }
  }
  if (half_turns.size() % 2 != 0)
    throw LogFailure("odd number of -1 eigenvalues; the rotation is not special orthogonal");
  // pair the -1 directions in Schur order into half-turn planes
  for (std::size_t p = 0; p + 1 < half_turns.size(); p += 2)
    planes_.push_back({half_turns[p], half_turns[p + 1], std::numbers::pi});
}

RealMat GlPlusPath::rotation_pow(double s) const {
  const Index n = target_.rows();
  RealMat block = RealMat::Identity(n, n);
  for (const RotationPlane& p : planes_) {
    const double ca = std::cos(s * p.angle);
    const double sa = std::sin(s * p.angle);
    block(p.i, p.i) = ca;
    block(p.j, p.j) = ca;
    block(p.i, p.j) = -sa;
    block(p.j, p.i) = sa;
  }
  return rot_basis_ * block * rot_basis_.transpose();
}

RealMat GlPlusPath::rotation_pow_derivative(double s) const {
  const Index n = target_.rows();
  RealMat block = RealMat::Zero(n, n);
  for (const RotationPlane& p : planes_) {
    const double ca = p.angle * std::cos(s * p.angle);
    const double sa = p.angle * std::sin(s * p.angle);
    block(p.i, p.i) = -sa;
    block(p.j, p.j) = -sa;
    block(p.i, p.j) = -ca;
    block(p.j, p.i) = ca;
  }
  return rot_basis_ * block * rot_basis_.transpose();
}

RealMat GlPlusPath::spd_pow(double s) const {
  const RealVec scale = (s * spd_log_.array()).exp().matrix();
  return spd_basis_ * scale.asDiagonal() * spd_basis_.transpose();
}

RealMat GlPlusPath::spd_pow_derivative(double s) const {
  const RealVec scale =
      (spd_log_.array() * (s * spd_log_.array()).exp()).matrix();
  return spd_basis_ * scale.asDiagonal() * spd_basis_.transpose();
}

RealMat GlPlusPath::at_parameter(double s) const {
  return rotation_pow(s) * spd_pow(s);
}

RealMat GlPlusPath::parameter_derivative(double s) const {
  return rotation_pow_derivative(s) * spd_pow(s) +
         rotation_pow(s) * spd_pow_derivative(s);
}

CoefficientFrame build_frame(const IntMat& a, const FrameOptions& options) {
  if (a.rows() < 1 || a.rows() != a.cols() || !is_unimodular(a))
    throw NotUnimodular("frame construction needs an element of GL(k,Z)");
  const int k = static_cast<int>(a.rows());
  const Int d = det(a);
  const SmoothStep step(options.step_lo, options.step_hi);

  CoefficientFrame frame;
  frame.k = k;
  frame.monodromy = a;

  if (d == 1) {
    auto path = std::make_shared<GlPlusPath>(to_real(a), step);
    frame.phi = [path](double t) { return (*path)(t); };
    frame.phi_prime = [path](double t) { return path->derivative(t); };
    frame.tau = [k](double) { return RealVec::Zero(k).eval(); };
    frame.tau_prime = [k](double) { return RealVec::Zero(k).eval(); };
    frame.flat_margin_start = options.step_lo;
    frame.flat_margin_end = 1.0 - options.step_hi;
    return frame;
  }

  // det = -1: flip phase on [0,1/2], then a GL+ path from D = diag(-1,1,..)
  // to A on [1/2,1]. The phase-2 target A*D (coefficients of the pushed
  // fields in the basis {-X_1, X_2, ...}) has determinant +1.
  const FlipProfile flip(options.flip_lo, options.flip_hi);
  const RealMat d_flip = flip_first_axis(k);
  const RealMat rebased_target = to_real(a) * d_flip;
  if (!(rebased_target.determinant() > 0.0))
    throw std::logic_error("rebased frame target must have positive determinant");
  auto path = std::make_shared<GlPlusPath>(rebased_target, step);

  frame.phi = [k, flip, path, d_flip](double t) {
    if (t < 0.5) {
      RealMat p = RealMat::Identity(k, k);
      p(0, 0) = flip(t);
      return p;
    }
    return ((*path)(2.0 * t - 1.0) * d_flip).eval();
  };
  frame.phi_prime = [k, flip, path, d_flip](double t) {
    if (t < 0.5) {
      RealMat p = RealMat::Zero(k, k);
      p(0, 0) = flip.derivative(t);
      return p;
    }
    return (2.0 * path->derivative(2.0 * t - 1.0) * d_flip).eval();
  };
  frame.tau = [k, flip](double t) {
    RealVec v = RealVec::Zero(k);
    if (t < 0.5) {
      const double r = flip(t);
      v(0) = 1.0 - r * r;
    }
    return v;
  };
  frame.tau_prime = [k, flip](double t) {
    RealVec v = RealVec::Zero(k);
    if (t < 0.5) v(0) = -2.0 * flip(t) * flip.derivative(t);
    return v;
  };
  frame.flat_margin_start = options.flip_lo;
  frame.flat_margin_end = (1.0 - options.step_hi) / 2.0;
  return frame;
}

RealVec bracket_coefficients(const CoefficientFrame& f, int i, int l, double t) {
  if (i < 0 || l < 0 || i >= f.k || l >= f.k)
    throw std::out_of_range("bracket field index out of range");
  const RealMat dphi = f.phi_prime(t);
  const RealVec tau = f.tau(t);
  const RealVec dtau = f.tau_prime(t);
  RealVec out(f.k + 1);
  out.head(f.k) = tau(i) * dphi.row(l).transpose() - tau(l) * dphi.row(i).transpose();
  out(f.k) = tau(i) * dtau(l) - tau(l) * dtau(i);
  return out;
}

RealVec bracket_coefficients_fd(const CoefficientFrame& f, int i, int l, double t,
                                double h) {
  if (i < 0 || l < 0 || i >= f.k || l >= f.k)
    throw std::out_of_range("bracket field index out of range");
  const RealMat dphi = (f.phi(t + h) - f.phi(t - h)) / (2.0 * h);
  const RealVec dtau = (f.tau(t + h) - f.tau(t - h)) / (2.0 * h);
  const RealVec tau = f.tau(t);
  RealVec out(f.k + 1);
  out.head(f.k) = tau(i) * dphi.row(l).transpose() - tau(l) * dphi.row(i).transpose();
  out(f.k) = tau(i) * dtau(l) - tau(l) * dtau(i);
  return out;
}

FrameReport verify_frame(const CoefficientFrame& f, int grid_n, double tol) {
  if (grid_n < 2) throw Error("verification grid needs at least 2 points");
  FrameReport report;
  report.grid_n = grid_n;
  report.tol = tol;

  const int k = f.k;
  double bracket_max = 0.0;
  double gram_min = std::numeric_limits<double>::infinity();
  for (int g = 0; g < grid_n; ++g) {
    const double t = static_cast<double>(g) / (grid_n - 1);
    for (int i = 0; i < k; ++i)
      for (int l = i + 1; l < k; ++l)
        bracket_max = std::max(bracket_max, bracket_coefficients(f, i, l, t).norm());
    RealMat extended(k, k + 1);
    extended.leftCols(k) = f.phi(t);
    extended.col(k) = f.tau(t);
    const double gram = (extended * extended.transpose()).determinant();
    gram_min = std::min(gram_min, std::sqrt(std::max(gram, 0.0)));
  }
  report.bracket_max = bracket_max;
  report.gram_min = gram_min;

  const RealMat target = to_real(f.monodromy);
  report.seam_phi_start = (f.phi(0.0) - RealMat::Identity(k, k)).norm();
  report.seam_phi_end = (f.phi(1.0) - target).norm();
  report.seam_tau_start = f.tau(0.0).norm();
  report.seam_tau_end = f.tau(1.0).norm();

  // one-sided stencils for the first three derivatives at the endpoints;
  // kept inside the frame's flat zones when their extent is known
  double h = 1e-3;
  if (f.flat_margin_start > 0.0 && f.flat_margin_end > 0.0)
    h = std::min(f.flat_margin_start, f.flat_margin_end) / 4.0;
  auto endpoint_flatness = [&](double t0, double dir) {
    RealMat samples[4];
    RealVec tau_samples[4];
    for (int j = 0; j < 4; ++j) {
      samples[j] = f.phi(t0 + dir * h * j);
      tau_samples[j] = f.tau(t0 + dir * h * j);
    }
    const double d1 = std::max((samples[1] - samples[0]).norm(),
                               (tau_samples[1] - tau_samples[0]).norm()) / h;
    const double d2 =
        std::max((samples[2] - 2.0 * samples[1] + samples[0]).norm(),
                 (tau_samples[2] - 2.0 * tau_samples[1] + tau_samples[0]).norm()) /
        (h * h);
    const double d3 =
        std::max((samples[3] - 3.0 * samples[2] + 3.0 * samples[1] - samples[0]).norm(),
                 (tau_samples[3] - 3.0 * tau_samples[2] + 3.0 * tau_samples[1] -
                  tau_samples[0])
                     .norm()) /
        (h * h * h);
    report.flat_d1 = std::max(report.flat_d1, d1);
    report.flat_d2 = std::max(report.flat_d2, d2);
    report.flat_d3 = std::max(report.flat_d3, d3);
  };
  endpoint_flatness(0.0, 1.0);
  endpoint_flatness(1.0, -1.0);

  report.pass = report.bracket_max <= tol && report.gram_min > 0.0 &&
                report.seam_phi_start <= tol && report.seam_phi_end <= tol &&
                report.seam_tau_start <= tol && report.seam_tau_end <= tol &&
                report.flat_d1 <= tol && report.flat_d2 <= tol && report.flat_d3 <= tol;
  return report;
}

CoefficientFrame concatenate(const CoefficientFrame& f, int q) {
  if (q < 1) throw Error("concatenation count must be >= 1");
  auto stages = std::make_shared<std::vector<RealMat>>();
  for (int j = 0; j < q; ++j) stages->push_back(to_real(power(f.monodromy, j)));

  auto locate = [q](double t) {
    const double u = t * q;
    const int j = std::min(static_cast<int>(u), q - 1);
    return std::pair<int, double>(j, u - j);
  };

  CoefficientFrame out;
  out.k = f.k;
  out.monodromy = power(f.monodromy, q);
  out.phi = [f, stages, locate](double t) {
    const auto [j, s] = locate(t);
    return (f.phi(s) * (*stages)[j]).eval();
  };
  out.phi_prime = [f, stages, locate, q](double t) {
    const auto [j, s] = locate(t);
    return (static_cast<double>(q) * f.phi_prime(s) * (*stages)[j]).eval();
  };
  out.tau = [f, locate](double t) { return f.tau(locate(t).second); };
  out.tau_prime = [f, locate, q](double t) {
    return (static_cast<double>(q) * f.tau_prime(locate(t).second)).eval();
  };
  out.flat_margin_start = f.flat_margin_start / q;
  out.flat_margin_end = f.flat_margin_end / q;
  return out;
}

}  // namespace rankgap
