#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "mub6/core.hpp"
#include "mub6/equivalence.hpp"

namespace mub6 {

inline constexpr const char* kVerdictRefuted = "LEMMA_CLAIM_REFUTED";
inline constexpr const char* kVerdictNotRefuted = "NOT_REFUTED";

/// Outcome of replaying the M6(a) counterexample.
struct LemmaReport {
  double t = 0;
  Complex a;
  bool is_hadamard_ok = false;
  double hadamard_residual = 0;
  bool lemma_form_ok = false;   ///< dephased, upper-left block (1 1; 1 1; 1 -1)
  double lemma_form_residual = 0;
  bool tail_ok = false;         ///< column 1 rows 3..5 equal (-1, s, -s)
  Complex s;                    ///< as produced by the pipeline (conj(a))
  std::optional<Complex> s_canonical;  ///< generic matcher output, Im >= 0
  std::array<double, 6> third_col_moduli{};
  double min_third_col_modulus = 0;
  std::string verdict;
  CMat6 matrix;
  TransformRecord record;  ///< apply(m6(t), record) == matrix
};

/// Builds m6(t), multiplies column 1 by conj(a), reorders rows to
/// (2, 3, 4, 5, 0, 1) and rephases columns 2..5 to dephase row 0, then checks
/// each assertion. Propagates DomainError / SolveError from m6.
LemmaReport run_counterexample(double t, const Tolerances& tol = {});

/// If the three values (already scaled by sqrt(6)) are {-1, s, -s} in some
/// order, returns s with Im(s) >= 0 (s = 1 for the real case). Values must be
/// unimodular within eq_tol (InvalidInput otherwise) and sum to -1.
std::optional<Complex> verify_tail_structure(const std::array<Complex, 3>& tail,
                                             const Tolerances& tol = {});

/// A unimodular third column (scaled by 1/sqrt(6)) orthogonal to the flat
/// first column and to (1, 1, -1, -1, s, -s)/sqrt(6).
struct ThirdColumnWitness {
  Complex s;
  ColVec6 v;
  double residual_c1 = 0;  ///< |<c1, v>|
  double residual_c2 = 0;  ///< |<c2, v>|
  double min_modulus = 0;
  int start = -1;  ///< multi-start index that produced it, -1 if supplied
};

/// Evaluates a candidate third column directly against both constraint columns.
ThirdColumnWitness check_witness(Complex s, const ColVec6& v);

/// True when residuals are below residual_tol and no entry is short of 1/sqrt(6).
bool witness_ok(const ThirdColumnWitness& w, const Tolerances& tol);

/// Multi-start search over five phases (entry 0 fixed to 1/sqrt(6)). Starts
/// are tried in index order and the first accepted one is returned. Throws
/// SearchFailure when no start succeeds; InvalidInput for |s| != 1.
ThirdColumnWitness third_column_witness(Complex s, const Tolerances& tol = {},
                                        std::uint64_t seed = 0, int starts = 256);

}  // namespace mub6
