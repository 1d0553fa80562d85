#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mub6/analysis.hpp"
#include "mub6/equivalence.hpp"
#include "mub6/families.hpp"
#include "support.hpp"

using namespace mub6;
using mub6::testing::cis;

namespace {

// |h_ac h_bd + h_ad h_bc| vanishes exactly when rows a, b of the block are
// orthogonal, given entries of equal modulus.
int h2_permanent_oracle(const CMat6& h, double tol) {
  int n = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        for (int d = c + 1; d < 6; ++d)
          n += std::abs(h(a, c) * h(b, d) + h(a, d) * h(b, c)) * 6.0 < tol;
  return n;
}

// A column can be made real by one phase iff multiplying by the conjugate
// phase of any one of its selected entries already does it. Tries each entry
// as the pivot instead of picking one.
bool rephasable_oracle(const CMat6& h, const std::vector<int>& rows, int c, const Tolerances& tol) {
  for (int pivot : rows) {
    const Complex ph = std::conj(unit_phase(h(pivot, c)));
    if (std::all_of(rows.begin(), rows.end(),
                    [&](int r) { return is_real_entry(h(r, c) * ph, tol); }))
      return true;
  }
  return false;
}

std::vector<SubmatrixLoc> rephased_oracle(const CMat6& h, int p, int q, const Tolerances& tol) {
  std::vector<SubmatrixLoc> out;
  for (const auto& rows : combinations(6, p))
    for (const auto& cols : combinations(6, q))
      if (std::all_of(cols.begin(), cols.end(),
                      [&](int c) { return rephasable_oracle(h, rows, c, tol); }))
        out.push_back({rows, cols});
  return out;
}

bool contains(const std::vector<SubmatrixLoc>& v, const SubmatrixLoc& loc) {
  return std::find(v.begin(), v.end(), loc) != v.end();
}

CMat6 perturbed_fourier(std::uint64_t seed, double spread) {
  std::mt19937_64 gen(seed);
  Mat6 m = fourier_f6(0, 0).data();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) *= cis(mub6::testing::uniform(gen, -spread, spread));
  return CMat6(m);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("combinations") {
  CHECK(combinations(6, 2).size() == 15);
  CHECK(combinations(6, 3).size() == 20);
  CHECK(combinations(6, 6).size() == 1);
  CHECK(combinations(6, 3).front() == std::vector<int>{0, 1, 2});
  CHECK(combinations(6, 3).back() == std::vector<int>{3, 4, 5});
}

TEST_CASE("real entries of the Fourier matrix") {
  int oracle = 0;
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) oracle += (j * k) % 6 == 0 || (j * k) % 6 == 3;
  CHECK(oracle == 20);
  CHECK(count_real_entries(fourier_f6(0, 0)) == oracle);
  CHECK_FALSE(exceeds_real_entry_bound(count_real_entries(fourier_f6(0, 0))));
  CHECK(exceeds_real_entry_bound(23));
  CHECK_FALSE(exceeds_real_entry_bound(22));
}

TEST_CASE("real entries of m6 and an all-real matrix") {
  CHECK(count_real_entries(m6(kTwoPi / 3)) >= 12);
  Mat6 m = Mat6::Constant(Complex(kInvSqrt6, 0));
  m(3, 4) = -kInvSqrt6;
  const int n = count_real_entries(CMat6(m));
  CHECK(n == 36);
  CHECK(exceeds_real_entry_bound(n));
}

TEST_CASE("real entry count is permutation invariant") {
  std::mt19937_64 gen(71);
  for (int k = 0; k < 40; ++k) {
    const CMat6 h = mub6::testing::family_member(k, gen);
    const TransformRecord r = TransformRecord::permutation(mub6::testing::random_perm(gen),
                                                           mub6::testing::random_perm(gen));
    CHECK(count_real_entries(apply(h, r)) == count_real_entries(h));
  }
}

TEST_CASE("raw real submatrices") {
  const CMat6 f = fourier_f6(0, 0);
  CHECK(contains(find_real_submatrices(f, 2, 2), {{0, 3}, {0, 3}}));
  const auto rows = find_real_submatrices(m6(2.3), 1, 6);
  CHECK(contains(rows, {{0}, {0, 1, 2, 3, 4, 5}}));
  CHECK_THROWS_AS(find_real_submatrices(f, 0, 2), InvalidInput);
  CHECK_THROWS_AS(find_real_submatrices(f, 3, 7), InvalidInput);
  CHECK_THROWS_AS(find_real_submatrices_up_to_rephasing(f, 7, 1), InvalidInput);
}

TEST_CASE("rephasing detector") {
  const Tolerances tol;
  const auto blocks = find_real_submatrices_up_to_rephasing(m6(kTwoPi / 3), 4, 2, tol);
  CHECK(contains(blocks, {{2, 3, 4, 5}, {0, 1}}));
  const auto small = find_real_submatrices_up_to_rephasing(m6(kTwoPi / 3), 3, 2, tol);
  CHECK(contains(small, {{2, 3, 4}, {0, 1}}));
  CHECK(contains(small, {{3, 4, 5}, {0, 1}}));

  const CMat6 p = perturbed_fourier(73, 0.4);
  CHECK(find_real_submatrices_up_to_rephasing(p, 3, 2, tol).empty());
  CHECK(rephased_oracle(p, 3, 2, tol).empty());

  std::mt19937_64 gen(79);
  for (int k = 0; k < 12; ++k) {
    const CMat6 h = apply(mub6::testing::family_member(k, gen), mub6::testing::random_record(gen));
    for (auto [pp, qq] : {std::pair{3, 2}, std::pair{2, 2}, std::pair{4, 2}}) {
      CHECK(find_real_submatrices_up_to_rephasing(h, pp, qq, tol) == rephased_oracle(h, pp, qq, tol));
    }
    const auto raw = find_real_submatrices(h, 3, 2, tol);
    const auto reph = find_real_submatrices_up_to_rephasing(h, 3, 2, tol);
    for (const auto& loc : raw) CHECK(contains(reph, loc));
  }
}

TEST_CASE("self-adjoint family has no real 3x2 block but many H2 blocks") {
  for (double th : {1.5, 2.0, 2.5, -2.8}) {
    const CMat6 h = b6(th);
    CHECK(find_real_submatrices(h, 3, 2).empty());
    const int n = count_h2_submatrices(h);
    CHECK(n > 18);
    CHECK(n == h2_permanent_oracle(h, 1e-9));
  }
}

TEST_CASE("H2 counts against the permanent oracle") {
  const CMat6 f = fourier_f6(0, 0);
  const int oracle = h2_permanent_oracle(f, 1e-9);
  CHECK(oracle == 45);
  CHECK(count_h2_submatrices(f) == oracle);
  CHECK(count_h2_submatrices(CMat6::flat()) == 0);

  std::mt19937_64 gen(83);
  for (int k = 0; k < 20; ++k) {
    const CMat6 h = mub6::testing::family_member(k, gen);
    const int n = count_h2_submatrices(h);
    CHECK(n == h2_permanent_oracle(h, 1e-9));
    CHECK(n <= 225);
    CHECK(static_cast<int>(find_unitary_submatrices(h, 2).size()) == n);
  }
}

TEST_CASE("pair partitions") {
  const auto& parts = pair_partitions();
  REQUIRE(parts.size() == 15);
  std::set<PairPartition> uniq(parts.begin(), parts.end());
  CHECK(uniq.size() == 15);
  for (const auto& p : parts) {
    std::set<int> seen;
    for (auto [a, b] : p) {
      CHECK(a < b);
      seen.insert(a);
      seen.insert(b);
    }
    CHECK(seen.size() == 6);
  }
  CHECK(std::is_sorted(parts.begin(), parts.end()));
}

TEST_CASE("H2 reducibility") {
  std::mt19937_64 gen(89);
  for (int k = 0; k < 12; ++k) {
    const CMat6 h = mub6::testing::family_member(k, gen);
    const auto part = is_h2_reducible(h);
    if (part) {
      CHECK(count_h2_submatrices(h) >= 9);
      for (auto [a, b] : part->rows)
        for (auto [c, d] : part->cols)
          CHECK(std::abs(h(a, c) * h(b, d) + h(a, d) * h(b, c)) * 6.0 < 1e-9);
    }
  }
  const CMat6 p = perturbed_fourier(97, 0.4);
  REQUIRE(count_h2_submatrices(p) < 9);
  CHECK_FALSE(is_h2_reducible(p).has_value());
  CHECK(is_h2_reducible(fourier_f6(0, 0)).has_value());
}

TEST_CASE("unitary submatrices") {
  const CMat6 f = fourier_f6(0, 0);
  CHECK(contains(find_unitary_submatrices(f, 3), {{0, 2, 4}, {0, 2, 4}}));
  const auto full = find_unitary_submatrices(m6(2.5), 6);
  REQUIRE(full.size() == 1);
  CHECK(full[0] == SubmatrixLoc{{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}});
  CHECK_THROWS_AS(find_unitary_submatrices(f, 1), InvalidInput);
  CHECK_THROWS_AS(find_unitary_submatrices(f, 7), InvalidInput);
}

TEST_CASE("product vectors") {
  const Tolerances tol;
  const ColVec6 flat = CMat6::flat().col(0);
  CHECK(is_product_vector(flat, Factorization::k2x3, tol));
  CHECK(is_product_vector(flat, Factorization::k3x2, tol));

  // (1, -1) x (1, w, w^2) in row-major 2x3 order
  const Complex w = cis(kTwoPi / 3);
  const Complex u[2] = {1, -1}, v[3] = {1, w, w * w};
  Vec6 tens;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) tens(3 * i + j) = u[i] * v[j] * kInvSqrt6;
  CHECK(is_product_vector(ColVec6(tens), Factorization::k2x3, tol));

  std::mt19937_64 gen(101);
  for (int k = 0; k < 100; ++k) {
    Vec6 r;
    for (int i = 0; i < 6; ++i) r(i) = cis(mub6::testing::uniform(gen, -kPi, kPi)) * kInvSqrt6;
    CHECK_FALSE(is_product_vector(ColVec6(r), Factorization::k2x3, tol));
    CHECK_FALSE(is_product_vector(ColVec6(r), Factorization::k3x2, tol));
  }
}

TEST_CASE("product triples") {
  const auto triple = find_product_triple(fourier_f6(0, 0));
  REQUIRE(triple.has_value());
  CHECK(triple->product_cols.size() >= 3);
  // Re-check the witness directly.
  const CMat6 f = fourier_f6(0, 0);
  for (int c : triple->product_cols) {
    Vec6 v;
    for (int i = 0; i < 6; ++i) v(i) = f(triple->row_perm[i], c);
    CHECK(is_product_vector(ColVec6(v), triple->factorization));
  }
  CHECK(product_triple_exists(s6()));
  CHECK_FALSE(product_triple_exists(m6(kTwoPi / 3)));
  CHECK_FALSE(product_triple_exists(perturbed_fourier(103, 0.5)));
}

TEST_CASE("submatrix rank") {
  const Tolerances tol;
  Mat6 m = Mat6::Constant(Complex(kInvSqrt6, 0));
  const SubmatrixLoc block{{0, 1, 2}, {0, 1}};
  CHECK(submatrix_rank(CMat6(m), block, tol) == 1);
  m(2, 1) = -kInvSqrt6;
  CHECK(submatrix_rank(CMat6(m), block, tol) == 2);
  CHECK(submatrix_rank(CMat6(Mat6::Zero()), block, tol) == 0);
  CHECK_THROWS_AS(submatrix_rank(CMat6(m), SubmatrixLoc{{1, 0}, {0}}, tol), InvalidInput);
  CHECK_THROWS_AS(submatrix_rank(CMat6(m), SubmatrixLoc{{0, 6}, {0}}, tol), InvalidInput);

  std::mt19937_64 gen(107);
  for (int k = 0; k < 30; ++k) {
    const CMat6 h = mub6::testing::family_member(k, gen);
    for (int p = 1; p <= 6; ++p)
      for (int q = 1; q <= 6; ++q) {
        const SubmatrixLoc loc{combinations(6, p)[k % combinations(6, p).size()],
                               combinations(6, q)[(k * 7) % combinations(6, q).size()]};
        CHECK(submatrix_rank(h, loc, tol) <= std::min(p, q));
      }
    CHECK(submatrix_rank(h, {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}}, tol) == 6);
  }
}

TEST_CASE("analysis report sections") {
  const CMat6 h = b6(2.0);
  const AnalysisReport full = analyze(h);
  CHECK(full.real_entry_count.has_value());
  CHECK(full.h2_submatrix_count.has_value());
  CHECK(full.product_triple_found.has_value());
  CHECK(*full.h2_submatrix_count == count_h2_submatrices(h));
  CHECK(full.real_3x2_raw->empty());

  const AnalysisReport h2 = analyze(h, {}, ReportSection::h2);
  CHECK_FALSE(h2.real_entry_count.has_value());
  CHECK(h2.h2_submatrix_count.has_value());
  CHECK_FALSE(h2.product_triple_found.has_value());

  const AnalysisReport real = analyze(h, {}, ReportSection::real);
  CHECK(real.real_entry_count.has_value());
  CHECK_FALSE(real.h2_submatrix_count.has_value());
}

}  // TEST_SUITE
