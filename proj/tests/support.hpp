#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mub6/core.hpp"
#include "mub6/equivalence.hpp"
#include "mub6/families.hpp"

namespace mub6::testing {

inline Complex cis(double a) { return std::polar(1.0, a); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline Perm6 random_perm(std::mt19937_64& gen) {
  Perm6 p;
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), gen);
  return p;
}

inline TransformRecord random_record(std::mt19937_64& gen) {
  TransformRecord r;
  r.row_perm = random_perm(gen);
  r.col_perm = random_perm(gen);
  for (int i = 0; i < kOrder; ++i) {
    r.row_phases[i] = cis(uniform(gen, -kPi, kPi));
    r.col_phases[i] = cis(uniform(gen, -kPi, kPi));
  }
  return r;
}

// Admissible M6 parameter drawn from either arc.
inline double random_m6_t(std::mt19937_64& gen) {
  const double t = uniform(gen, kPi / 2 + 1e-3, kPi);
  return uniform(gen, 0, 1) < 0.5 ? t : t + kPi;
}

// Self-adjoint family parameter, kept away from the arc edge where x
// degenerates.
inline double random_b6_theta(std::mt19937_64& gen) {
  const double th = uniform(gen, kB6ArcStart + 0.05, kPi);
  return uniform(gen, 0, 1) < 0.5 ? th : -th;
}

// Fourier matrix written straight from w^{jk}, independent of fourier_f6.
inline Mat6 fourier_oracle() {
  Mat6 m;
  for (int j = 0; j < kOrder; ++j)
    for (int k = 0; k < kOrder; ++k) m(j, k) = cis(kTwoPi * ((j * k) % 6) / 6.0) * kInvSqrt6;
  return m;
}

inline CMat6 family_member(int which, std::mt19937_64& gen) {
  switch (which % 4) {
    case 0: return fourier_f6(uniform(gen, -kPi, kPi), uniform(gen, -kPi, kPi));
    case 1: return m6(random_m6_t(gen));
    case 2: return b6(random_b6_theta(gen));
    default: return s6();
  }
}

}  // namespace mub6::testing
