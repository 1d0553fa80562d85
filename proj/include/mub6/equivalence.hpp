#pragma once

#include <array>
#include <optional>

#include "mub6/core.hpp"

namespace mub6 {

using Perm6 = std::array<int, 6>;
using Phases6 = std::array<Complex, 6>;

/// Audit record of a Hadamard equivalence. Indices are 0-based. Applying it
/// to H gives
///
///   result(i, j) = row_phases[i] * H(row_perm[i], col_perm[j]) * col_phases[j]
///
/// i.e. diag(row_phases) * P_row * H * P_col * diag(col_phases).
struct TransformRecord {
  Perm6 row_perm{0, 1, 2, 3, 4, 5};
  Perm6 col_perm{0, 1, 2, 3, 4, 5};
  Phases6 row_phases{1, 1, 1, 1, 1, 1};
  Phases6 col_phases{1, 1, 1, 1, 1, 1};

  static TransformRecord identity() { return {}; }
  static TransformRecord permutation(const Perm6& rows, const Perm6& cols);
  static TransformRecord rephasing(const Phases6& rows, const Phases6& cols);

  /// Record equivalent to applying `first` and then `then`.
  static TransformRecord compose(const TransformRecord& first, const TransformRecord& then);

  /// Max deviation of any phase from the unit circle.
  double phase_defect() const;
};

bool is_permutation(const Perm6& p);

/// Throws InvalidInput if either permutation is malformed.
CMat6 apply(const CMat6& h, const TransformRecord& r);

struct Dephased {
  CMat6 matrix;
  TransformRecord record;
};

/// Rephases columns so row 0 is positive real, then rows so column 0 is.
/// Throws InvalidInput when row 0 or column 0 holds an entry of modulus below
/// eq_tol.
Dephased dephase(const CMat6& h, const Tolerances& tol = {});

/// Normalized shape with a real upper-left 3x2 block:
///
///   1  1
///   1  y
///   1  x     (times 1/sqrt(6)), y, x in {+1, -1}
///
/// Whenever the block is not rank one the form has (y, x) = (1, -1) and the
/// remaining rows are ordered so that column 1 ends in (-1, s, -s)/sqrt(6).
/// A rank-one block is reported as (1, 1) with rank_one set and no s.
struct LemmaForm {
  CMat6 matrix;
  int y = 1;
  int x = -1;
  std::optional<Complex> s;
  bool rank_one = false;
  /// Source rows placed at positions 0..2 and source columns at 0..1.
  std::array<int, 3> block_rows{};
  std::array<int, 2> block_cols{};
  TransformRecord record;
};

/// Exhaustive search over ordered column pairs and ordered row triples for an
/// equivalent dephased matrix whose upper-left 3x2 block is real. Among all
/// hits the lexicographically smallest (cols, rows) with (y, x) = (1, -1) is
/// chosen; rank-one blocks are returned only when no other choice exists.
std::optional<LemmaForm> to_lemma_form(const CMat6& h, const Tolerances& tol = {});

/// Largest violation of the LemmaForm invariants (0 when all hold exactly).
double lemma_form_defect(const LemmaForm& form);

}  // namespace mub6
