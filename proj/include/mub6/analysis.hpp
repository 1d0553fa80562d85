#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mub6/core.hpp"

namespace mub6 {

/// Row and column selection of a submatrix. Indices are 0-based and strictly
/// increasing; serialized output shifts them to 1-based.
struct SubmatrixLoc {
  std::vector<int> rows;
  std::vector<int> cols;

  bool valid() const;
  friend bool operator==(const SubmatrixLoc&, const SubmatrixLoc&) = default;
  friend auto operator<=>(const SubmatrixLoc&, const SubmatrixLoc&) = default;
};

/// Threshold on real entries; matrices above it are the ones the bound excludes.
inline constexpr int kRealEntryBound = 22;

int count_real_entries(const CMat6& h, const Tolerances& tol = {});
inline bool exceeds_real_entry_bound(int count) { return count > kRealEntryBound; }

/// All p-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

/// Every p x q submatrix whose raw entries are all real. Throws InvalidInput
/// unless 1 <= p, q <= 6.
std::vector<SubmatrixLoc> find_real_submatrices(const CMat6& h, int p, int q,
                                                const Tolerances& tol = {});

/// Every p x q submatrix that becomes real after one phase per selected
/// column, i.e. the selected entries of each column are collinear mod pi.
std::vector<SubmatrixLoc> find_real_submatrices_up_to_rephasing(const CMat6& h, int p, int q,
                                                                const Tolerances& tol = {});

/// True when rows (a, b) restricted to columns (c, d) are orthogonal. For
/// unimodular entries this is proportionality to an order-2 Hadamard matrix;
/// other inputs go through the same test.
bool is_h2_block(const CMat6& h, int a, int b, int c, int d, const Tolerances& tol);

/// Number of the 225 2x2 submatrices passing is_h2_block.
int count_h2_submatrices(const CMat6& h, const Tolerances& tol = {});

using PairPartition = std::array<std::pair<int, int>, 3>;

/// The 15 partitions of {0..5} into unordered pairs, in canonical order.
const std::vector<PairPartition>& pair_partitions();

struct H2Partition {
  PairPartition rows;
  PairPartition cols;
};

/// First (row, column) pair-partition, in canonical order, whose nine blocks
/// all pass is_h2_block.
std::optional<H2Partition> is_h2_reducible(const CMat6& h, const Tolerances& tol = {});

/// All k x k submatrices S with S S^dagger = c I for some c > 0. Throws
/// InvalidInput unless 2 <= k <= 6.
std::vector<SubmatrixLoc> find_unitary_submatrices(const CMat6& h, int k,
                                                   const Tolerances& tol = {});

enum class Factorization { k2x3, k3x2 };

/// Reshapes v row-major into 2x3 or 3x2 and tests sigma_2 <= rank_tol * sigma_1.
bool is_product_vector(const ColVec6& v, Factorization f, const Tolerances& tol = {});

struct ProductTriple {
  std::array<int, 6> row_perm;  ///< permuted row i is source row row_perm[i]
  Factorization factorization;
  std::vector<int> product_cols;  ///< at least three
};

/// Brute force over all 720 row orders and both factorizations.
std::optional<ProductTriple> find_product_triple(const CMat6& h, const Tolerances& tol = {});
inline bool product_triple_exists(const CMat6& h, const Tolerances& tol = {}) {
  return find_product_triple(h, tol).has_value();
}

/// Numerical rank from singular values: count of sigma_i > rank_tol * sigma_1.
/// An all-zero block has rank 0. Throws InvalidInput for an invalid loc.
int submatrix_rank(const CMat6& h, const SubmatrixLoc& loc, const Tolerances& tol = {});

enum class ReportSection { full, real, h2, product };

struct AnalysisReport {
  std::string label;
  std::optional<int> real_entry_count;
  std::optional<bool> exceeds_real_entry_bound;
  std::optional<std::vector<SubmatrixLoc>> real_3x2_raw;
  std::optional<std::vector<SubmatrixLoc>> real_3x2_rephased;
  std::optional<int> h2_submatrix_count;
  std::optional<H2Partition> h2_reducible_partition;
  std::optional<std::vector<SubmatrixLoc>> unitary_3x3;
  std::optional<bool> product_triple_found;
};

AnalysisReport analyze(const CMat6& h, const Tolerances& tol = {},
                       ReportSection section = ReportSection::full);

}  // namespace mub6
