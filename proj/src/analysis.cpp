#include "mub6/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace mub6 {

namespace {

void require_size(int v, int lo, const char* what) {
  if (v < lo || v > kOrder) {
    throw InvalidInput(std::string(what) + " out of range");
  }
}

Eigen::MatrixXcd extract(const CMat6& h, const SubmatrixLoc& loc) {
  Eigen::MatrixXcd s(loc.rows.size(), loc.cols.size());
  for (size_t i = 0; i < loc.rows.size(); ++i)
    for (size_t j = 0; j < loc.cols.size(); ++j) s(i, j) = h(loc.rows[i], loc.cols[j]);
  return s;
}

// One phase makes every selected entry of column c real: all entries are
// collinear with the largest one, modulo pi.
bool column_rephasable(const CMat6& h, const std::vector<int>& rows, int c,
                       const Tolerances& tol) {
  int ref = rows.front();
  for (int r : rows)
    if (std::abs(h(r, c)) > std::abs(h(ref, c))) ref = r;
  if (std::abs(h(ref, c)) == 0.0) return true;
  const Complex phase = std::conj(unit_phase(h(ref, c)));
  return std::all_of(rows.begin(), rows.end(),
                     [&](int r) { return is_real_entry(h(r, c) * phase, tol); });
}

void build_partitions(std::vector<int>& remaining, std::vector<std::pair<int, int>>& acc,
                      std::vector<PairPartition>& out) {
  if (remaining.empty()) {
    out.push_back({acc[0], acc[1], acc[2]});
    return;
  }
  const int first = remaining.front();
  for (size_t k = 1; k < remaining.size(); ++k) {
    const int partner = remaining[k];
    std::vector<int> rest;
    for (size_t m = 1; m < remaining.size(); ++m)
      if (m != k) rest.push_back(remaining[m]);
    acc.emplace_back(first, partner);
    build_partitions(rest, acc, out);
    acc.pop_back();
  }
}

}  // namespace

bool SubmatrixLoc::valid() const {
  auto ok = [](const std::vector<int>& v) {
    if (v.empty() || v.size() > static_cast<size_t>(kOrder)) return false;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= kOrder) return false;
      if (i > 0 && v[i] <= v[i - 1]) return false;
    }
    return true;
  };
  return ok(rows) && ok(cols);
}

int count_real_entries(const CMat6& h, const Tolerances& tol) {
  int n = 0;
  for (int i = 0; i < kOrder; ++i)
    for (int j = 0; j < kOrder; ++j) n += is_real_entry(h(i, j), tol);
  return n;
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<SubmatrixLoc> find_real_submatrices(const CMat6& h, int p, int q,
                                                const Tolerances& tol) {
  require_size(p, 1, "row count");
  require_size(q, 1, "column count");
  std::vector<SubmatrixLoc> out;
  for (const auto& rows : combinations(kOrder, p))
    for (const auto& cols : combinations(kOrder, q)) {
      bool real = true;
      for (int r : rows)
        for (int c : cols) real = real && is_real_entry(h(r, c), tol);
      if (real) out.push_back({rows, cols});
    }
  return out;
}

std::vector<SubmatrixLoc> find_real_submatrices_up_to_rephasing(const CMat6& h, int p, int q,
                                                                const Tolerances& tol) {
  require_size(p, 1, "row count");
  require_size(q, 1, "column count");
  std::vector<SubmatrixLoc> out;
  for (const auto& rows : combinations(kOrder, p)) {
    std::array<bool, 6> ok{};
    for (int c = 0; c < kOrder; ++c) ok[c] = column_rephasable(h, rows, c, tol);
    for (const auto& cols : combinations(kOrder, q))
      if (std::all_of(cols.begin(), cols.end(), [&](int c) { return ok[c]; }))
        out.push_back({rows, cols});
  }
  return out;
}

bool is_h2_block(const CMat6& h, int a, int b, int c, int d, const Tolerances& tol) {
  const Complex dot = std::conj(h(a, c)) * h(b, c) + std::conj(h(a, d)) * h(b, d);
  return std::abs(dot) < tol.eq_tol;
}

int count_h2_submatrices(const CMat6& h, const Tolerances& tol) {
  int n = 0;
  for (int a = 0; a < kOrder; ++a)
    for (int b = a + 1; b < kOrder; ++b)
      for (int c = 0; c < kOrder; ++c)
        for (int d = c + 1; d < kOrder; ++d) n += is_h2_block(h, a, b, c, d, tol);
  return n;
}

const std::vector<PairPartition>& pair_partitions() {
  static const std::vector<PairPartition> parts = [] {
    std::vector<PairPartition> out;
    std::vector<int> all{0, 1, 2, 3, 4, 5};
    std::vector<std::pair<int, int>> acc;
    build_partitions(all, acc, out);
    return out;
  }();
  return parts;
}

std::optional<H2Partition> is_h2_reducible(const CMat6& h, const Tolerances& tol) {
  for (const auto& rows : pair_partitions())
    for (const auto& cols : pair_partitions()) {
      bool all = true;
      for (const auto& [a, b] : rows)
        for (const auto& [c, d] : cols) all = all && is_h2_block(h, a, b, c, d, tol);
      if (all) return H2Partition{rows, cols};
    }
  return std::nullopt;
}

std::vector<SubmatrixLoc> find_unitary_submatrices(const CMat6& h, int k,
                                                   const Tolerances& tol) {
  require_size(k, 2, "block size");
  std::vector<SubmatrixLoc> out;
  for (const auto& rows : combinations(kOrder, k))
    for (const auto& cols : combinations(kOrder, k)) {
      SubmatrixLoc loc{rows, cols};
      const Eigen::MatrixXcd s = extract(h, loc);
      const Eigen::MatrixXcd g = s * s.adjoint();
      const double scale = g(0, 0).real();
      if (scale <= tol.eq_tol) continue;
      const Eigen::MatrixXcd dev = g - scale * Eigen::MatrixXcd::Identity(k, k);
      if (dev.cwiseAbs().maxCoeff() < tol.eq_tol) out.push_back(std::move(loc));
    }
  return out;
}

bool is_product_vector(const ColVec6& v, Factorization f, const Tolerances& tol) {
  const int rows = f == Factorization::k2x3 ? 2 : 3;
  const int cols = kOrder / rows;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(1) <= tol.rank_tol * sv(0);
}

std::optional<ProductTriple> find_product_triple(const CMat6& h, const Tolerances& tol) {
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  do {
    for (Factorization f : {Factorization::k2x3, Factorization::k3x2}) {
      std::vector<int> cols;
      for (int c = 0; c < kOrder; ++c) {
        Vec6 v;
        for (int i = 0; i < kOrder; ++i) v(i) = h(perm[i], c);
        if (is_product_vector(ColVec6(v), f, tol)) cols.push_back(c);
      }
      if (cols.size() >= 3) return ProductTriple{perm, f, cols};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

int submatrix_rank(const CMat6& h, const SubmatrixLoc& loc, const Tolerances& tol) {
  if (!loc.valid()) throw InvalidInput("invalid submatrix location");
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(extract(h, loc));
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol.rank_tol * sv(0);
  return rank;
}

AnalysisReport analyze(const CMat6& h, const Tolerances& tol, ReportSection section) {
  AnalysisReport r;
  r.label = h.label();
  const bool full = section == ReportSection::full;
  if (full || section == ReportSection::real) {
    r.real_entry_count = count_real_entries(h, tol);
    r.exceeds_real_entry_bound = exceeds_real_entry_bound(*r.real_entry_count);
    r.real_3x2_raw = find_real_submatrices(h, 3, 2, tol);
    r.real_3x2_rephased = find_real_submatrices_up_to_rephasing(h, 3, 2, tol);
  }
  if (full || section == ReportSection::h2) {
    r.h2_submatrix_count = count_h2_submatrices(h, tol);
    if (auto part = is_h2_reducible(h, tol)) r.h2_reducible_partition = *part;
    r.unitary_3x3 = find_unitary_submatrices(h, 3, tol);
  }
  if (full || section == ReportSection::product) {
    r.product_triple_found = product_triple_exists(h, tol);
  }
  return r;
}

}  // namespace mub6
