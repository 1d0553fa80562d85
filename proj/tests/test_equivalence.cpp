#include <doctest.h>

#include <random>

#include "mub6/analysis.hpp"
#include "mub6/equivalence.hpp"
#include "mub6/families.hpp"
#include "support.hpp"

using namespace mub6;
using mub6::testing::cis;
using mub6::testing::random_record;

TEST_SUITE("equivalence") {

TEST_CASE("identity record and double swap") {
  const CMat6 h = m6(2.4);
  CHECK(max_abs_diff(apply(h, TransformRecord::identity()), h) == 0.0);
  const TransformRecord swap =
      TransformRecord::permutation({1, 0, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5});
  const CMat6 once = apply(h, swap);
  CHECK(max_abs_diff(once, h) > 0.1);
  CHECK(max_abs_diff(apply(once, swap), h) == 0.0);
}

TEST_CASE("apply matches the documented formula") {
  std::mt19937_64 gen(41);
  const CMat6 h = b6(2.0);
  for (int k = 0; k < 20; ++k) {
    const TransformRecord r = random_record(gen);
    Mat6 pr = Mat6::Zero(), pc = Mat6::Zero(), dr = Mat6::Zero(), dc = Mat6::Zero();
    for (int i = 0; i < 6; ++i) {
      pr(i, r.row_perm[i]) = 1;
      pc(r.col_perm[i], i) = 1;
      dr(i, i) = r.row_phases[i];
      dc(i, i) = r.col_phases[i];
    }
    const CMat6 want(dr * pr * h.data() * pc * dc);
    CHECK(max_abs_diff(apply(h, r), want) < 1e-15);
  }
}

TEST_CASE("bad permutations are rejected") {
  TransformRecord r;
  r.row_perm = {0, 0, 2, 3, 4, 5};
  CHECK_FALSE(is_permutation(r.row_perm));
  CHECK_THROWS_AS(apply(fourier_f6(0, 0), r), InvalidInput);
  r = TransformRecord{};
  r.col_perm = {0, 1, 2, 3, 4, 6};
  CHECK_THROWS_AS(apply(fourier_f6(0, 0), r), InvalidInput);
}

TEST_CASE("compose agrees with sequential application") {
  std::mt19937_64 gen(43);
  const CMat6 h = s6();
  for (int k = 0; k < 50; ++k) {
    const TransformRecord a = random_record(gen), b = random_record(gen);
    const CMat6 seq = apply(apply(h, a), b);
    CHECK(max_abs_diff(apply(h, TransformRecord::compose(a, b)), seq) < 1e-14);
  }
}

TEST_CASE("column 1 of m6(2pi/3) times conj(a) gives a real lower-left 4x2 block") {
  const double t = kTwoPi / 3;
  Phases6 cols{1, std::conj(cis(t)), 1, 1, 1, 1};
  const CMat6 h = apply(m6(t), TransformRecord::rephasing({1, 1, 1, 1, 1, 1}, cols));
  const Tolerances tol;
  for (int i = 2; i < 6; ++i)
    for (int j = 0; j < 2; ++j) CHECK(is_real_entry(h(i, j), tol));
}

TEST_CASE("dephase examples") {
  const CMat6 f = fourier_f6(0, 0);
  CHECK(max_abs_diff(dephase(f).matrix, f) < 1e-15);
  const CMat6 h = m6(kTwoPi / 3);
  CHECK(max_abs_diff(dephase(h).matrix, h) < 1e-15);

  const TransformRecord phases = TransformRecord::rephasing(
      {cis(0.3), cis(-1.2), cis(2.9), cis(0.0), cis(1.1), cis(-2.5)},
      {cis(0.7), cis(-0.4), cis(1.9), cis(-3.0), cis(0.2), cis(2.2)});
  CHECK(max_abs_diff(dephase(apply(f, phases)).matrix, f) < 1e-14);

  CHECK_THROWS_AS(dephase(CMat6::identity()), InvalidInput);
}

TEST_CASE("apply and dephase invariants over random records") {
  const Tolerances tol;
  std::mt19937_64 gen(47);
  for (const CMat6& h : {fourier_f6(0.4, -1.3), m6(2.2), b6(-2.6)}) {
    const int h2 = count_h2_submatrices(h, tol);
    for (int k = 0; k < 100; ++k) {
      const TransformRecord r = random_record(gen);
      const CMat6 g = apply(h, r);
      CHECK(is_hadamard(g, tol));
      CHECK(count_h2_submatrices(g, tol) == h2);

      const Dephased d = dephase(g, tol);
      for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(d.matrix(0, i) - kInvSqrt6) < tol.eq_tol);
        CHECK(std::abs(d.matrix(i, 0) - kInvSqrt6) < tol.eq_tol);
      }
      CHECK(max_abs_diff(apply(g, d.record), d.matrix) < 1e-12);
      CHECK(max_abs_diff(dephase(d.matrix, tol).matrix, d.matrix) < 1e-12);
      CHECK(d.record.phase_defect() < 1e-12);
    }
  }
}

TEST_CASE("lemma form of m6(2pi/3)") {
  const double t = kTwoPi / 3;
  const CMat6 h = m6(t);
  const auto form = to_lemma_form(h);
  REQUIRE(form.has_value());
  CHECK(form->y == 1);
  CHECK(form->x == -1);
  CHECK_FALSE(form->rank_one);
  REQUIRE(form->s.has_value());
  CHECK(std::abs(*form->s - std::conj(cis(t))) < 1e-9);
  CHECK(lemma_form_defect(*form) < 1e-9);
  CHECK(max_abs_diff(apply(h, form->record), form->matrix) < 1e-12);
}

TEST_CASE("lemma form of the Fourier matrix replays") {
  const CMat6 f = fourier_f6(0, 0);
  const auto form = to_lemma_form(f);
  REQUIRE(form.has_value());
  CHECK(lemma_form_defect(*form) < 1e-9);
  CHECK(max_abs_diff(apply(f, form->record), form->matrix) < 1e-12);
  CHECK(is_hadamard(form->matrix, Tolerances{}));
}

TEST_CASE("lemma form is found on random equivalents") {
  std::mt19937_64 gen(53);
  for (const CMat6& h : {m6(2.7), m6(5.5), fourier_f6(0.9, 0.2)}) {
    for (int k = 0; k < 10; ++k) {
      const CMat6 g = apply(h, random_record(gen));
      const auto form = to_lemma_form(g);
      REQUIRE(form.has_value());
      CHECK(form->x == -1);
      CHECK(lemma_form_defect(*form) < 1e-9);
      CHECK(max_abs_diff(apply(g, form->record), form->matrix) < 1e-12);
    }
  }
}

TEST_CASE("perturbed phases leave no lemma form") {
  std::mt19937_64 gen(59);
  Mat6 m = fourier_f6(0, 0).data();
  for (int i = 1; i < 6; ++i)
    for (int j = 1; j < 6; ++j) m(i, j) *= cis(mub6::testing::uniform(gen, -0.5, 0.5));
  const CMat6 p(m);
  CHECK_FALSE(to_lemma_form(p).has_value());
  CHECK(find_real_submatrices_up_to_rephasing(p, 3, 2).empty());
}

TEST_CASE("rank-one block is flagged") {
  // Columns 0 and 1 are equal and every other column has generic phases, so
  // the only real 3x2 blocks are rank one.
  Mat6 m = Mat6::Constant(Complex(kInvSqrt6, 0));
  std::mt19937_64 gen(61);
  for (int i = 1; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      m(i, j) *= cis(mub6::testing::uniform(gen, 0.3, 2.8));
  for (int i = 0; i < 6; ++i) m(i, 1) = m(i, 0);
  const auto form = to_lemma_form(CMat6(m));
  REQUIRE(form.has_value());
  CHECK(form->rank_one);
  CHECK(form->y == 1);
  CHECK(form->x == 1);
  CHECK_FALSE(form->s.has_value());
  CHECK(lemma_form_defect(*form) < 1e-9);
}

}  // TEST_SUITE
