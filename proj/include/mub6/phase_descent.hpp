#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace mub6 {

/// Five free phases; the first vector entry is gauge-fixed to a real value.
using Angles5 = Eigen::Matrix<double, 5, 1>;

/// Residual vector r(x) and its Jacobian for a least-squares problem in five
/// angles. The objective is |r|^2.
/// Start point for multi-start index `start` under `seed`: five angles uniform
/// in [0, 2pi). Uses mt19937_64 and seed_seq, both fully specified by the
/// standard, and an explicit 53-bit conversion, so streams are portable.
inline Angles5 start_angles(std::uint64_t seed, std::uint64_t start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(start >> 32)};
  std::mt19937_64 gen(seq);
  Angles5 x;
  for (int k = 0; k < 5; ++k) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    x(k) = u * 6.283185307179586476925;
  }
  return x;
}

template <int M>
using ResidualFn =
    std::function<void(const Angles5&, Eigen::Matrix<double, M, 1>&, Eigen::Matrix<double, M, 5>&)>;

struct DescentResult {
  Angles5 x;
  double value = 0;  ///< |r(x)|^2
  int descent_iters = 0;
  int polish_iters = 0;
};

/// Steepest descent on |r|^2 with Armijo backtracking for at most max_iters
/// steps, followed by a damped Gauss-Newton polish once the objective is
/// small. The polish is bounded separately.
template <int M>
DescentResult descend(const ResidualFn<M>& fn, Angles5 x, int max_iters) {
  using Vec = Eigen::Matrix<double, M, 1>;
  using Jac = Eigen::Matrix<double, M, 5>;
  constexpr double kPolishFrom = 1e-3;
  constexpr double kDone = 1e-28;
  constexpr int kMaxPolish = 40;

  Vec r;
  Jac j;
  fn(x, r, j);
  double f = r.squaredNorm();
  DescentResult out;
  double alpha = 1.0;

  Vec r_try;
  Jac j_try;
  while (out.descent_iters < max_iters && f > kPolishFrom) {
    ++out.descent_iters;
    const Angles5 grad = 2.0 * j.transpose() * r;
    const double g2 = grad.squaredNorm();
    if (g2 < 1e-28) break;
    alpha = std::min(alpha * 2.0, 1e3);
    bool moved = false;
    for (int k = 0; k < 60; ++k, alpha *= 0.5) {
      const Angles5 cand = x - alpha * grad;
      fn(cand, r_try, j_try);
      const double f_try = r_try.squaredNorm();
      if (f_try <= f - 1e-4 * alpha * g2) {
        x = cand;
        r = r_try;
        j = j_try;
        f = f_try;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  if (f <= kPolishFrom) {
    double lambda = 1e-6;
    while (out.polish_iters < kMaxPolish && f > kDone) {
      ++out.polish_iters;
      const Eigen::Matrix<double, 5, 5> jtj = j.transpose() * j;
      const Angles5 rhs = -(j.transpose() * r);
      const Angles5 step =
          (jtj + lambda * Eigen::Matrix<double, 5, 5>::Identity()).ldlt().solve(rhs);
      const Angles5 cand = x + step;
      fn(cand, r_try, j_try);
      const double f_try = r_try.squaredNorm();
      if (f_try < f) {
        x = cand;
        r = r_try;
        j = j_try;
        f = f_try;
        lambda = std::max(lambda * 0.1, 1e-15);
      } else {
        lambda *= 10.0;
        if (lambda > 1e6) break;
      }
    }
  }
  out.x = x;
  out.value = f;
  return out;
}

}  // namespace mub6
