#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mub6 {

using Complex = std::complex<double>;
using Mat6 = Eigen::Matrix<Complex, 6, 6>;
using Vec6 = Eigen::Matrix<Complex, 6, 1>;

inline constexpr int kOrder = 6;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
// 1/sqrt(6), the modulus of every entry of an order-6 Hadamard matrix.
inline const double kInvSqrt6 = 1.0 / std::sqrt(6.0);
inline const double kSqrt6 = std::sqrt(6.0);

// Error taxonomy shared by all modules.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Approximation policy used by every predicate. There is no global epsilon;
/// callers pass one of these explicitly.
struct Tolerances {
  double eq_tol = 1e-9;        ///< exactness predicates (entries, unitarity)
  double residual_tol = 1e-8;  ///< optimizer acceptance
  double cluster_tol = 1e-6;   ///< solution deduplication
  double rank_tol = 1e-9;      ///< relative singular-value cutoff

  /// Throws InvalidInput unless all values are positive and eq_tol <= cluster_tol.
  void validate() const;
  static Tolerances with_eq_tol(double eq_tol);
};

/// Column vector of order 6 with finite entries.
class ColVec6 {
 public:
  ColVec6() : v_(Vec6::Zero()) {}
  explicit ColVec6(const Vec6& v);
  ColVec6(std::initializer_list<Complex> entries);

  const Vec6& data() const { return v_; }
  Complex operator[](int i) const { return v_(i); }
  static ColVec6 unit(int i);

 private:
  Vec6 v_;
};

/// Dense 6x6 complex matrix with an optional text label. Entries are checked
/// finite at construction and never mutated afterwards.
class CMat6 {
 public:
  CMat6() : m_(Mat6::Zero()) {}
  explicit CMat6(const Mat6& m, std::string label = {});

  const Mat6& data() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  const std::string& label() const { return label_; }
  CMat6 with_label(std::string label) const { return CMat6(m_, std::move(label)); }

  ColVec6 col(int c) const { return ColVec6(m_.col(c)); }
  ColVec6 row(int r) const { return ColVec6(m_.row(r).transpose()); }

  CMat6 adjoint() const { return CMat6(m_.adjoint(), label_); }
  CMat6 transpose() const { return CMat6(m_.transpose(), label_); }

  static CMat6 identity() { return CMat6(Mat6::Identity(), "I"); }
  /// All entries equal to 1/sqrt(6); rank one, not unitary.
  static CMat6 flat();

 private:
  Mat6 m_;
  std::string label_;
};

/// sum_i conj(u_i) v_i
Complex inner(const ColVec6& u, const ColVec6& v);

/// max |(M M^dagger - I)_{ij}|
double unitarity_residual(const CMat6& m);
/// max_{ij} | |M_ij| - 1/sqrt(6) |
double modulus_residual(const CMat6& m);

bool is_unitary(const CMat6& m, const Tolerances& tol);
bool is_hadamard(const CMat6& m, const Tolerances& tol);

/// Largest entrywise distance between two matrices.
double max_abs_diff(const CMat6& a, const CMat6& b);

/// True when the entry is real after accounting for the 1/sqrt(6) scale.
inline bool is_real_entry(Complex z, const Tolerances& tol) {
  return std::abs(z.imag() * kSqrt6) < tol.eq_tol;
}

/// Phase of z as a unit complex number; z must be nonzero.
inline Complex unit_phase(Complex z) { return z / std::abs(z); }

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace mub6
