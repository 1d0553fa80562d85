#include "mub6/refutation.hpp"

#include <algorithm>

#include "mub6/families.hpp"
#include "mub6/phase_descent.hpp"

namespace mub6 {

LemmaReport run_counterexample(double t, const Tolerances& tol) {
  const CMat6 h = m6(t, tol);
  const Complex a = std::polar(1.0, t);

  // Column 1 times conj(a): lower-left 4x2 block becomes real.
  TransformRecord record = TransformRecord::rephasing({1, 1, 1, 1, 1, 1},
                                                      {1, std::conj(a), 1, 1, 1, 1});
  // Rows 2..5 move up so column 1 reads (1, 1, -1, -1, conj(a), -conj(a)).
  record = TransformRecord::compose(
      record, TransformRecord::permutation({2, 3, 4, 5, 0, 1}, {0, 1, 2, 3, 4, 5}));
  // Rephase the remaining columns so the new row 0 is flat.
  const CMat6 partial = apply(h, record);
  Phases6 col_phases{1, 1, 1, 1, 1, 1};
  for (int j = 2; j < kOrder; ++j) col_phases[j] = std::conj(unit_phase(partial(0, j)));
  record = TransformRecord::compose(record,
                                    TransformRecord::rephasing({1, 1, 1, 1, 1, 1}, col_phases));

  LemmaReport rep;
  rep.t = t;
  rep.a = a;
  rep.record = record;
  rep.matrix = apply(h, record).with_label("counterexample(" + h.label() + ")");
  const CMat6& m = rep.matrix;

  rep.hadamard_residual = std::max(unitarity_residual(m), modulus_residual(m));
  rep.is_hadamard_ok = is_hadamard(m, tol);

  double form = 0;
  for (int k = 0; k < kOrder; ++k) {
    form = std::max(form, std::abs(m(0, k) - kInvSqrt6));
    form = std::max(form, std::abs(m(k, 0) - kInvSqrt6));
  }
  form = std::max(form, std::abs(m(1, 1) - kInvSqrt6));
  form = std::max(form, std::abs(m(2, 1) + kInvSqrt6));
  rep.lemma_form_residual = form;
  rep.lemma_form_ok = form < tol.eq_tol;

  const std::array<Complex, 3> tail{m(3, 1) * kSqrt6, m(4, 1) * kSqrt6, m(5, 1) * kSqrt6};
  rep.s = tail[1];
  try {
    rep.s_canonical = verify_tail_structure(tail, tol);
  } catch (const InvalidInput&) {
    rep.s_canonical.reset();
  }
  rep.tail_ok = rep.s_canonical.has_value() && std::abs(tail[0] + 1.0) < tol.eq_tol &&
                std::abs(tail[2] + tail[1]) < tol.eq_tol;

  for (int i = 0; i < kOrder; ++i) rep.third_col_moduli[i] = std::abs(m(i, 2));
  rep.min_third_col_modulus =
      *std::min_element(rep.third_col_moduli.begin(), rep.third_col_moduli.end());

  const bool refuted = rep.lemma_form_ok && rep.tail_ok &&
                       rep.min_third_col_modulus > kInvSqrt6 - tol.eq_tol;
  rep.verdict = refuted ? kVerdictRefuted : kVerdictNotRefuted;
  return rep;
}

std::optional<Complex> verify_tail_structure(const std::array<Complex, 3>& tail,
                                             const Tolerances& tol) {
  for (Complex z : tail) {
    if (std::abs(std::abs(z) - 1.0) >= tol.eq_tol) {
      throw InvalidInput("tail entries must be unimodular after scaling by sqrt(6)");
    }
  }
  // Orthogonality to the flat column forces the sum to be -1.
  if (std::abs(tail[0] + tail[1] + tail[2] + 1.0) >= tol.eq_tol) return std::nullopt;

  for (int k = 0; k < 3; ++k) {
    if (std::abs(tail[k] + 1.0) >= tol.eq_tol) continue;
    const Complex u = tail[(k + 1) % 3];
    const Complex w = tail[(k + 2) % 3];
    if (std::abs(u + w) >= tol.eq_tol) continue;
    Complex s = u;
    if (std::abs(s.imag()) < tol.eq_tol) {
      s = std::abs(u.real() - 1.0) < std::abs(w.real() - 1.0) ? u : w;
    } else if (s.imag() < 0) {
      s = w;
    }
    return s;
  }
  return std::nullopt;
}

ThirdColumnWitness check_witness(Complex s, const ColVec6& v) {
  const ColVec6 c1{1, 1, 1, 1, 1, 1};
  const ColVec6 c2{1, 1, -1, -1, s, -s};
  ThirdColumnWitness w;
  w.s = s;
  w.v = v;
  w.residual_c1 = std::abs(inner(c1, v)) * kInvSqrt6;
  w.residual_c2 = std::abs(inner(c2, v)) * kInvSqrt6;
  w.min_modulus = v.data().cwiseAbs().minCoeff();
  return w;
}

bool witness_ok(const ThirdColumnWitness& w, const Tolerances& tol) {
  return w.residual_c1 < tol.residual_tol && w.residual_c2 < tol.residual_tol &&
         w.min_modulus > kInvSqrt6 - tol.eq_tol;
}

ThirdColumnWitness third_column_witness(Complex s, const Tolerances& tol, std::uint64_t seed,
                                        int starts) {
  if (std::abs(std::abs(s) - 1.0) >= tol.eq_tol) {
    throw InvalidInput("s must be unimodular");
  }
  if (starts < 1) throw InvalidInput("starts must be positive");
  const std::array<Complex, 6> weights{1, 1, -1, -1, std::conj(s), -std::conj(s)};

  // r = (Re, Im) of sum_i u_i and sum_i conj(c2_i) u_i, with u_i = e^{i phi_i}.
  const ResidualFn<4> fn = [&](const Angles5& x, Eigen::Matrix<double, 4, 1>& r,
                               Eigen::Matrix<double, 4, 5>& j) {
    Complex s1 = 1.0, s2 = 1.0;
    for (int k = 0; k < 5; ++k) {
      const Complex u = std::polar(1.0, x(k));
      s1 += u;
      s2 += weights[k + 1] * u;
      const Complex d1 = Complex(0, 1) * u;
      const Complex d2 = Complex(0, 1) * weights[k + 1] * u;
      j(0, k) = d1.real();
      j(1, k) = d1.imag();
      j(2, k) = d2.real();
      j(3, k) = d2.imag();
    }
    r << s1.real(), s1.imag(), s2.real(), s2.imag();
  };

  for (int k = 0; k < starts; ++k) {
    const DescentResult res = descend<4>(fn, start_angles(seed, k), 500);
    Vec6 v;
    v(0) = kInvSqrt6;
    for (int i = 0; i < 5; ++i) v(i + 1) = std::polar(kInvSqrt6, res.x(i));
    ThirdColumnWitness w = check_witness(s, ColVec6(v));
    w.start = k;
    if (witness_ok(w, tol)) return w;
  }
  throw SearchFailure("no third-column witness found within the start budget");
}

}  // namespace mub6
