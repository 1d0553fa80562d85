#include "mub6/families.hpp"

#include <cstdio>
#include <limits>

namespace mub6 {

const double kB6ArcStart = std::acos((std::sqrt(3.0) - 1.0) / 2.0);

namespace {

using Angles = Eigen::Matrix<double, 6, 1>;
// 15 off-diagonal entries of M M^dagger, real and imaginary parts.
using Residual = Eigen::Matrix<double, 30, 1>;
using Jacobian = Eigen::Matrix<double, 30, 6>;

Complex cis(double a) { return std::polar(1.0, a); }

double reduce_two_pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r <= 0) r += kTwoPi;
  return r;
}

M6Entries entries_from_angles(const Angles& x) {
  return {cis(x(0)), cis(x(1)), cis(x(2)), cis(x(3)), cis(x(4)), cis(x(5))};
}

// Which unknown (0..5 for b..g) sits at each of the lower-right 4x4 entries.
constexpr int kSlot[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 4, 5},
    {3, 2, 5, 4},
};

Mat6 layout_m6(Complex a, const std::array<Complex, 6>& vals) {
  Mat6 m;
  m.row(0).setConstant(1.0);
  m.col(0).setConstant(1.0);
  m(1, 1) = -1.0;
  m(1, 2) = m(2, 1) = a;
  m(1, 3) = m(3, 1) = a;
  m(1, 4) = m(4, 1) = -a;
  m(1, 5) = m(5, 1) = -a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i + 2, j + 2) = vals[kSlot[i][j]];
  return m;
}

Mat6 raw_m6(Complex a, const Angles& x) {
  return layout_m6(a, {cis(x(0)), cis(x(1)), cis(x(2)), cis(x(3)), cis(x(4)), cis(x(5))});
}

Residual residual(const Mat6& m) {
  const Mat6 g = m * m.adjoint();
  Residual r;
  int k = 0;
  for (int i = 0; i < kOrder; ++i)
    for (int j = i + 1; j < kOrder; ++j) {
      r(k) = g(i, j).real();
      r(k + 15) = g(i, j).imag();
      ++k;
    }
  return r;
}

Jacobian jacobian(const Mat6& m) {
  Jacobian jac;
  for (int p = 0; p < 6; ++p) {
    Mat6 dm = Mat6::Zero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (kSlot[i][j] == p) dm(i + 2, j + 2) = Complex(0, 1) * m(i + 2, j + 2);
    const Mat6 dg = dm * m.adjoint() + m * dm.adjoint();
    int k = 0;
    for (int i = 0; i < kOrder; ++i)
      for (int j = i + 1; j < kOrder; ++j) {
        jac(k, p) = dg(i, j).real();
        jac(k + 15, p) = dg(i, j).imag();
        ++k;
      }
  }
  return jac;
}

// Gauss-Newton on the unnormalized orthogonality system. Returns false when the
// iteration does not reach the target residual.
bool newton(Complex a, Angles& x) {
  constexpr double kTarget = 1e-13;
  for (int it = 0; it < 25; ++it) {
    const Mat6 m = raw_m6(a, x);
    const Residual r = residual(m);
    if (r.cwiseAbs().maxCoeff() < kTarget) return true;
    const Angles step = jacobian(m).colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) return false;
    x += step;
  }
  return residual(raw_m6(a, x)).cwiseAbs().maxCoeff() < kTarget;
}

// Exact root at a = -1: b = e^{i pi/3}, c = e^{-i pi/3}, d = g = w^2, e = f = w^4
// with w = e^{i pi/3}.
Angles root_at_pi() {
  Angles x;
  x << kPi / 3, 5 * kPi / 3, 2 * kPi / 3, 4 * kPi / 3, 4 * kPi / 3, 2 * kPi / 3;
  return x;
}

// Continuation along the first arc from t = pi down to the target.
Angles continue_first_arc(double target) {
  constexpr double kMaxStep = 0.05;
  constexpr double kMinStep = 1e-7;
  Angles x = root_at_pi();
  Angles prev = x;
  double t = kPi;
  double prev_t = kPi;
  double h = kMaxStep;
  while (t > target) {
    const double next = std::max(target, t - h);
    Angles guess = x;
    if (t != prev_t) guess += (x - prev) * ((next - t) / (t - prev_t));
    if (newton(cis(next), guess)) {
      prev = x;
      prev_t = t;
      x = guess;
      t = next;
      h = std::min(kMaxStep, h * 2);
    } else {
      h /= 2;
      if (h < kMinStep) throw SolveError("M6 continuation stalled");
    }
  }
  return x;
}

}  // namespace

bool is_m6_admissible(double t) {
  if (!std::isfinite(t)) return false;
  const double r = reduce_two_pi(t);
  return (r > kPi / 2 && r <= kPi) || (r > 3 * kPi / 2 && r <= kTwoPi);
}

CMat6 assemble_m6(Complex a, const M6Entries& e, std::string label) {
  return CMat6(layout_m6(a, {e.b, e.c, e.d, e.e, e.f, e.g}) * kInvSqrt6, std::move(label));
}

M6Entries solve_m6_entries(Complex a, const Tolerances& tol) {
  if (std::abs(std::abs(a) - 1.0) >= tol.eq_tol) {
    throw DomainError("M6 parameter a must be unimodular");
  }
  const double t = reduce_two_pi(std::arg(a));
  if (!is_m6_admissible(t)) {
    throw DomainError("M6 parameter t outside (pi/2, pi] U (3pi/2, 2pi]");
  }
  const Complex unit_a = a / std::abs(a);

  M6Entries out;
  if (t <= kPi) {
    out = entries_from_angles(continue_first_arc(t));
  } else {
    // Solve for -a on the first arc, then swap {3,4} <-> {5,6}.
    const M6Entries base = entries_from_angles(continue_first_arc(t - kPi));
    out = {base.f, base.g, base.d, base.e, base.b, base.c};
  }

  const CMat6 check = assemble_m6(unit_a, out);
  if (!is_hadamard(check, tol)) {
    throw SolveError("M6 entries do not reassemble into a Hadamard matrix");
  }
  return out;
}

CMat6 m6(double t, const Tolerances& tol) {
  if (!is_m6_admissible(t)) {
    throw DomainError("M6 parameter t outside (pi/2, pi] U (3pi/2, 2pi]");
  }
  const Complex a = cis(t);
  const M6Entries e = solve_m6_entries(a, tol);
  char label[64];
  std::snprintf(label, sizeof label, "M6(t=%.17g) branch 0", t);
  return assemble_m6(a, e, label);
}

std::vector<double> m6_grid(int n) {
  std::vector<double> ts;
  ts.reserve(n);
  for (int k = 1; k <= n; ++k) ts.push_back(kPi / 2 + k * (kPi / 2) / n);
  return ts;
}

CMat6 fourier_f6(double x1, double x2) {
  Mat6 m;
  for (int j = 0; j < kOrder; ++j)
    for (int k = 0; k < kOrder; ++k) m(j, k) = cis(kTwoPi * (j * k % 6) / 6);
  // Odd rows pick up e^{i x1} in columns 1, 4 and e^{i x2} in columns 2, 5.
  for (int j = 1; j < kOrder; j += 2) {
    m(j, 1) *= cis(x1);
    m(j, 4) *= cis(x1);
    m(j, 2) *= cis(x2);
    m(j, 5) *= cis(x2);
  }
  char label[80];
  std::snprintf(label, sizeof label, "F6(x1=%.17g,x2=%.17g)", x1, x2);
  return CMat6(m * kInvSqrt6, label);
}

bool is_b6_admissible(double theta) {
  if (!std::isfinite(theta)) return false;
  return std::abs(wrap_angle(theta)) > kB6ArcStart;
}

CMat6 b6(double theta) {
  if (!is_b6_admissible(theta)) {
    throw DomainError("B6 parameter outside the admissible arc");
  }
  const Complex y = cis(theta);
  const Complex y2 = y * y;
  const Complex x =
      (1.0 + 2.0 * y + y2 - std::sqrt(2.0) * std::sqrt(1.0 + 2.0 * y + 2.0 * y2 * y + y2 * y2)) /
      (1.0 + 2.0 * y - y2);
  const Complex sum = x - y - 2.0;
  const double phi = std::arg(sum);
  const double spread = std::acos(std::min(1.0, std::abs(sum) / 2.0));

  Mat6 best;
  double best_res = std::numeric_limits<double>::infinity();
  for (double sign : {1.0, -1.0}) {
    const Complex t = cis(phi + sign * spread);
    const Complex w = cis(phi - sign * spread);
    const Complex xc = std::conj(x), yc = std::conj(y);
    Mat6 m;
    m << 1, 1, 1, 1, 1, 1,
         1, -1, -xc, -y, y, xc,
         1, -x, 1, y, t, w,
         1, -yc, yc, -1, w, -w,
         1, yc, std::conj(t), std::conj(w), 1, -xc,
         1, x, std::conj(w), -std::conj(w), -x, -1;
    m *= kInvSqrt6;
    const double res = (m * m.adjoint() - Mat6::Identity()).cwiseAbs().maxCoeff();
    if (res < best_res) {
      best_res = res;
      best = m;
    }
  }
  char label[64];
  std::snprintf(label, sizeof label, "B6(theta=%.17g)", theta);
  return CMat6(best, label);
}

CMat6 s6() {
  const Complex w = cis(kTwoPi / 3);
  const Complex w2 = w * w;
  Mat6 m;
  m << 1, 1, 1, 1, 1, 1,
       1, 1, w, w, w2, w2,
       1, w, 1, w2, w2, w,
       1, w, w2, 1, w, w2,
       1, w2, w2, w, 1, w,
       1, w2, w, w2, w, 1;
  return CMat6(m * kInvSqrt6, "S6");
}

}  // namespace mub6
