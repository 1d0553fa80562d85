#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mub6/core.hpp"
#include "mub6/phase_descent.hpp"

namespace mub6 {

/// Unit vector with entries e^{i phi_k}/sqrt(6), phi_0 = 0, unbiased to the
/// identity by construction and to the searched Hadamard matrix up to
/// `residual`.
struct MUVector {
  std::array<double, 5> phases{};  ///< each in [0, 2pi)
  ColVec6 vector;
  double residual = 0;  ///< max_j |6 |<h_j, v>|^2 - 1|
};

struct OptimConfig {
  int starts = 2000;
  int max_iters = 500;
  std::uint64_t seed = 0;
  Tolerances tol;
  int threads = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

struct ObjectiveValue {
  double value = 0;
  Angles5 gradient;
};

/// sum_j (6 |<h_j, v(phases)>|^2 - 1)^2 and its exact gradient.
ObjectiveValue mu_objective(const CMat6& h, const Angles5& phases);

/// Same objective for an arbitrary vector (no gauge fixing).
double mu_objective_value(const CMat6& h, const ColVec6& v);

/// Independent unbiasedness residual max_j |6 |<h_j, v>|^2 - 1|.
double mu_residual(const CMat6& h, const ColVec6& v);

/// Vector e^{i phases}/sqrt(6) with entry 0 fixed.
ColVec6 phase_vector(const Angles5& phases);

/// Max wrapped angular difference after removing each vector's entry-0 phase.
double phase_distance(const ColVec6& u, const ColVec6& v);

/// Keeps the first representative of every cluster (distance < cluster_tol)
/// in input order, then sorts by phases.
std::vector<MUVector> dedupe(const std::vector<MUVector>& in, double cluster_tol);

/// Multi-start search; results are deduplicated and sorted, and depend only on
/// the config (never on thread scheduling).
std::vector<MUVector> find_mu_vectors(const CMat6& h, const OptimConfig& cfg);

using Basis = std::array<int, 6>;

/// All 6-cliques of the orthogonality graph (edge iff |<u, v>| < eq_tol),
/// as ascending index sets in lexicographic order.
std::vector<Basis> extract_bases(const std::vector<MUVector>& vectors, const Tolerances& tol = {});

struct TripleCertificate {
  double max_overlap = 0;          ///< max |<b_i, b_j>|, i != j
  double max_norm_defect = 0;      ///< max | |b_i| - 1 |
  double max_unbias_identity = 0;  ///< max |6 |b_ik|^2 - 1|
  double max_unbias_h = 0;         ///< max |6 |<h_j, b_i>|^2 - 1|
  bool ok = false;
};

/// Direct check that {I, H, B} are pairwise mutually unbiased bases.
TripleCertificate certify_triple(const CMat6& h, const std::vector<MUVector>& vectors,
                                 const Basis& basis, const Tolerances& tol = {});

struct ScanRow {
  double t = 0;
  Complex a;
  bool valid = false;
  std::string error;
  int n_mu_vectors = 0;
  int n_bases = 0;
  int n_triples = 0;
  double max_residual = 0;
  int starts = 0;
  std::uint64_t seed = 0;
  double wall_time = 0;  ///< seconds
};

/// One row per t in input order. Domain or solve failures are captured in the
/// row and do not abort the scan.
std::vector<ScanRow> scan_m6(const std::vector<double>& t_values, const OptimConfig& cfg);

inline constexpr const char* kScanCsvHeader =
    "t,a_re,a_im,n_mu_vectors,n_bases,n_triples,max_residual,starts,seed,wall_time_s";

/// Writes the scan CSV. With record_timing false the wall_time_s column is 0
/// so that output is byte-identical across runs.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows, bool record_timing);
void write_scan_plot(std::ostream& out, const std::vector<ScanRow>& rows);

/// Runs fn(i) for i in [0, n) across worker threads.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace mub6
