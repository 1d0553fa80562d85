#include "mub6/equivalence.hpp"

#include <algorithm>
#include <limits>

namespace mub6 {

TransformRecord TransformRecord::permutation(const Perm6& rows, const Perm6& cols) {
  TransformRecord r;
  r.row_perm = rows;
  r.col_perm = cols;
  return r;
}

TransformRecord TransformRecord::rephasing(const Phases6& rows, const Phases6& cols) {
  TransformRecord r;
  r.row_phases = rows;
  r.col_phases = cols;
  return r;
}

TransformRecord TransformRecord::compose(const TransformRecord& first,
                                         const TransformRecord& then) {
  // then(first(H))(i,j) = tr[i] * fr[tp[i]] * H(fp[tp[i]], fq[tq[j]]) * fc[tq[j]] * tc[j]
  TransformRecord out;
  for (int i = 0; i < kOrder; ++i) {
    out.row_perm[i] = first.row_perm[then.row_perm[i]];
    out.row_phases[i] = then.row_phases[i] * first.row_phases[then.row_perm[i]];
    out.col_perm[i] = first.col_perm[then.col_perm[i]];
    out.col_phases[i] = first.col_phases[then.col_perm[i]] * then.col_phases[i];
  }
  return out;
}

double TransformRecord::phase_defect() const {
  double worst = 0;
  for (int i = 0; i < kOrder; ++i) {
    worst = std::max(worst, std::abs(std::abs(row_phases[i]) - 1.0));
    worst = std::max(worst, std::abs(std::abs(col_phases[i]) - 1.0));
  }
  return worst;
}

bool is_permutation(const Perm6& p) {
  std::array<bool, 6> seen{};
  for (int v : p) {
    if (v < 0 || v >= kOrder || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

CMat6 apply(const CMat6& h, const TransformRecord& r) {
  if (!is_permutation(r.row_perm) || !is_permutation(r.col_perm)) {
    throw InvalidInput("transform record holds an invalid permutation");
  }
  Mat6 out;
  for (int i = 0; i < kOrder; ++i)
    for (int j = 0; j < kOrder; ++j)
      out(i, j) = r.row_phases[i] * h(r.row_perm[i], r.col_perm[j]) * r.col_phases[j];
  return CMat6(out, h.label());
}

Dephased dephase(const CMat6& h, const Tolerances& tol) {
  for (int k = 0; k < kOrder; ++k) {
    if (std::abs(h(0, k)) < tol.eq_tol || std::abs(h(k, 0)) < tol.eq_tol) {
      throw InvalidInput("cannot dephase: zero entry in the first row or column");
    }
  }
  TransformRecord r;
  for (int j = 0; j < kOrder; ++j) r.col_phases[j] = std::conj(unit_phase(h(0, j)));
  for (int i = 0; i < kOrder; ++i) r.row_phases[i] = std::conj(unit_phase(h(i, 0) * r.col_phases[0]));
  return {apply(h, r), r};
}

namespace {

struct Candidate {
  std::array<int, 2> cols;
  std::array<int, 3> rows;
  bool rank_one;
};

Perm6 lead_then_rest(std::initializer_list<int> lead) {
  Perm6 p{};
  int k = 0;
  for (int v : lead) p[k++] = v;
  for (int v = 0; v < kOrder; ++v)
    if (std::find(lead.begin(), lead.end(), v) == lead.end()) p[k++] = v;
  return p;
}

// Dephased real-block signs for an ordered candidate, or nullopt if the block
// is not real. Signs are relative to the first selected row.
std::optional<std::array<int, 3>> block_signs(const CMat6& h, int p, int q,
                                              const std::array<int, 3>& rows,
                                              const Tolerances& tol) {
  // After moving (rows[0], p) to the corner and dephasing, entry (r, q) is
  //   h(r,q) conj(h(r,p)) conj(h(r0,q)) h(r0,p) / |h(r,p) h(r0,q) h(r0,p)|.
  const int r0 = rows[0];
  std::array<int, 3> signs{1, 1, 1};
  for (int k = 1; k < 3; ++k) {
    const int r = rows[k];
    const Complex num = h(r, q) * std::conj(h(r, p)) * std::conj(h(r0, q)) * h(r0, p);
    const double den = std::abs(h(r, p)) * std::abs(h(r0, q)) * std::abs(h(r0, p));
    if (den < tol.eq_tol) return std::nullopt;
    const Complex z = num / den;
    if (!is_real_entry(z, tol)) return std::nullopt;
    signs[k] = z.real() >= 0 ? 1 : -1;
  }
  return signs;
}

}  // namespace

std::optional<LemmaForm> to_lemma_form(const CMat6& h, const Tolerances& tol) {
  std::optional<Candidate> best;
  std::optional<Candidate> best_rank_one;
  for (int p = 0; p < kOrder && !best; ++p) {
    for (int q = 0; q < kOrder && !best; ++q) {
      if (p == q) continue;
      for (int r0 = 0; r0 < kOrder && !best; ++r0)
        for (int r1 = 0; r1 < kOrder && !best; ++r1)
          for (int r2 = 0; r2 < kOrder && !best; ++r2) {
            if (r0 == r1 || r0 == r2 || r1 == r2) continue;
            const auto signs = block_signs(h, p, q, {r0, r1, r2}, tol);
            if (!signs) continue;
            const int y = (*signs)[1], x = (*signs)[2];
            if (y == 1 && x == -1) {
              best = Candidate{{p, q}, {r0, r1, r2}, false};
            } else if (y == 1 && x == 1 && !best_rank_one) {
              best_rank_one = Candidate{{p, q}, {r0, r1, r2}, true};
            }
          }
    }
  }
  // Loops run in lexicographic order, so the first hit is the canonical one.
  const std::optional<Candidate> chosen = best ? best : best_rank_one;
  if (!chosen) return std::nullopt;

  const auto [p, q] = chosen->cols;
  const auto [r0, r1, r2] = chosen->rows;
  const TransformRecord order =
      TransformRecord::permutation(lead_then_rest({r0, r1, r2}), lead_then_rest({p, q}));
  Dephased d = dephase(apply(h, order), tol);
  TransformRecord record = TransformRecord::compose(order, d.record);

  LemmaForm form;
  form.block_rows = chosen->rows;
  form.block_cols = chosen->cols;
  form.rank_one = chosen->rank_one;
  form.y = 1;
  form.x = chosen->rank_one ? 1 : -1;

  if (!chosen->rank_one) {
    // Move the tail row closest to -1/sqrt(6) in column 1 up front; the other
    // two keep their relative order.
    int minus_one = 3;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int i = 3; i < kOrder; ++i) {
      const double gap = std::abs(d.matrix(i, 1) * kSqrt6 + 1.0);
      if (gap < best_gap) {
        best_gap = gap;
        minus_one = i;
      }
    }
    Perm6 tail{0, 1, 2, minus_one, 0, 0};
    int k = 4;
    for (int i = 3; i < kOrder; ++i)
      if (i != minus_one) tail[k++] = i;
    record = TransformRecord::compose(record, TransformRecord::permutation(tail, Perm6{0, 1, 2, 3, 4, 5}));
  }
  form.record = record;
  form.matrix = apply(h, record);
  if (!chosen->rank_one) form.s = form.matrix(4, 1) * kSqrt6;
  return form;
}

double lemma_form_defect(const LemmaForm& form) {
  const CMat6& m = form.matrix;
  double worst = 0;
  auto track = [&](Complex got, Complex want) {
    worst = std::max(worst, std::abs(got - want));
  };
  for (int k = 0; k < kOrder; ++k) {
    track(m(0, k), kInvSqrt6);
    track(m(k, 0), kInvSqrt6);
  }
  track(m(1, 1), form.y * kInvSqrt6);
  track(m(2, 1), form.x * kInvSqrt6);
  if (form.s) {
    track(m(3, 1), -kInvSqrt6);
    track(m(4, 1), *form.s * kInvSqrt6);
    track(m(5, 1), -*form.s * kInvSqrt6);
  }
  return worst;
}

}  // namespace mub6
