#include "mub6/core.hpp"

#include <cmath>

namespace mub6 {

namespace {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m(i);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidInput(std::string(what) + " has a non-finite entry");
    }
  }
}

}  // namespace

void Tolerances::validate() const {
  if (!(eq_tol > 0 && residual_tol > 0 && cluster_tol > 0 && rank_tol > 0)) {
    throw InvalidInput("tolerances must be strictly positive");
  }
  if (eq_tol > cluster_tol) {
    throw InvalidInput("eq_tol must not exceed cluster_tol");
  }
}

Tolerances Tolerances::with_eq_tol(double eq_tol) {
  Tolerances t;
  t.eq_tol = eq_tol;
  t.validate();
  return t;
}

ColVec6::ColVec6(const Vec6& v) : v_(v) { require_finite(v_, "vector"); }

ColVec6::ColVec6(std::initializer_list<Complex> entries) {
  if (entries.size() != kOrder) throw InvalidInput("vector needs exactly 6 entries");
  int i = 0;
  for (Complex z : entries) v_(i++) = z;
  require_finite(v_, "vector");
}

ColVec6 ColVec6::unit(int i) {
  Vec6 v = Vec6::Zero();
  v(i) = 1.0;
  return ColVec6(v);
}

CMat6::CMat6(const Mat6& m, std::string label) : m_(m), label_(std::move(label)) {
  require_finite(m_, "matrix");
}

CMat6 CMat6::flat() {
  return CMat6(Mat6::Constant(Complex(kInvSqrt6, 0.0)), "flat");
}

Complex inner(const ColVec6& u, const ColVec6& v) {
  return u.data().dot(v.data());  // Eigen conjugates the first argument
}

double unitarity_residual(const CMat6& m) {
  const Mat6 r = m.data() * m.data().adjoint() - Mat6::Identity();
  return r.cwiseAbs().maxCoeff();
}

double modulus_residual(const CMat6& m) {
  return (m.data().cwiseAbs().array() - kInvSqrt6).abs().maxCoeff();
}

bool is_unitary(const CMat6& m, const Tolerances& tol) {
  return unitarity_residual(m) < tol.eq_tol;
}

bool is_hadamard(const CMat6& m, const Tolerances& tol) {
  return modulus_residual(m) < tol.eq_tol && is_unitary(m, tol);
}

double max_abs_diff(const CMat6& a, const CMat6& b) {
  return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

double wrap_angle(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

}  // namespace mub6
