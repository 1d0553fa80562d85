#include "mub6/musearch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "mub6/families.hpp"

namespace mub6 {

void OptimConfig::validate() const {
  if (starts < 1) throw InvalidInput("starts must be >= 1");
  if (max_iters < 1) throw InvalidInput("max_iters must be >= 1");
  if (threads < 0) throw InvalidInput("threads must be >= 0");
  tol.validate();
}

namespace {

using Res6 = Eigen::Matrix<double, 6, 1>;
using Jac6 = Eigen::Matrix<double, 6, 5>;

// r_j = 6 |z_j|^2 - 1 with z_j = <h_j, v>; dr_j/dphi_k = -12 Im(conj(z_j) conj(h_kj) v_k).
void mu_residuals(const Mat6& h, const Angles5& x, Res6& r, Jac6& jac) {
  Vec6 v;
  v(0) = kInvSqrt6;
  for (int k = 0; k < 5; ++k) v(k + 1) = std::polar(kInvSqrt6, x(k));
  const Vec6 z = h.adjoint() * v;
  for (int j = 0; j < kOrder; ++j) {
    r(j) = 6.0 * std::norm(z(j)) - 1.0;
    const Complex zc = std::conj(z(j));
    for (int k = 0; k < 5; ++k) {
      jac(j, k) = -12.0 * (zc * std::conj(h(k + 1, j)) * v(k + 1)).imag();
    }
  }
}

double canonical_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w = 0;
  return w;
}

}  // namespace

ColVec6 phase_vector(const Angles5& phases) {
  Vec6 v;
  v(0) = kInvSqrt6;
  for (int k = 0; k < 5; ++k) v(k + 1) = std::polar(kInvSqrt6, phases(k));
  return ColVec6(v);
}

ObjectiveValue mu_objective(const CMat6& h, const Angles5& phases) {
  Res6 r;
  Jac6 jac;
  mu_residuals(h.data(), phases, r, jac);
  return {r.squaredNorm(), 2.0 * jac.transpose() * r};
}

double mu_objective_value(const CMat6& h, const ColVec6& v) {
  double value = 0;
  for (int j = 0; j < kOrder; ++j) {
    const double rj = 6.0 * std::norm(inner(h.col(j), v)) - 1.0;
    value += rj * rj;
  }
  return value;
}

double mu_residual(const CMat6& h, const ColVec6& v) {
  double worst = 0;
  for (int j = 0; j < kOrder; ++j) {
    worst = std::max(worst, std::abs(6.0 * std::norm(inner(h.col(j), v)) - 1.0));
  }
  return worst;
}

double phase_distance(const ColVec6& u, const ColVec6& v) {
  const Complex gu = std::conj(unit_phase(u[0]));
  const Complex gv = std::conj(unit_phase(v[0]));
  double worst = 0;
  for (int i = 0; i < kOrder; ++i) {
    const double d = wrap_angle(std::arg(u[i] * gu) - std::arg(v[i] * gv));
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

std::vector<MUVector> dedupe(const std::vector<MUVector>& in, double cluster_tol) {
  std::vector<MUVector> kept;
  for (const MUVector& cand : in) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const MUVector& k) {
      return phase_distance(k.vector, cand.vector) < cluster_tol;
    });
    if (!dup) kept.push_back(cand);
  }
  std::sort(kept.begin(), kept.end(),
            [](const MUVector& a, const MUVector& b) { return a.phases < b.phases; });
  return kept;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<MUVector> find_mu_vectors(const CMat6& h, const OptimConfig& cfg) {
  cfg.validate();
  const Mat6 hm = h.data();
  const ResidualFn<6> fn = [&hm](const Angles5& x, Res6& r, Jac6& j) { mu_residuals(hm, x, r, j); };

  // Slot per start so the merge order is the seed order.
  std::vector<std::optional<MUVector>> found(cfg.starts);
  parallel_for(cfg.starts, cfg.threads, [&](int k) {
    const DescentResult res = descend<6>(fn, start_angles(cfg.seed, k), cfg.max_iters);
    MUVector mv;
    for (int i = 0; i < 5; ++i) mv.phases[i] = canonical_angle(res.x(i));
    Angles5 canon;
    for (int i = 0; i < 5; ++i) canon(i) = mv.phases[i];
    mv.vector = phase_vector(canon);
    mv.residual = mu_residual(h, mv.vector);
    if (mv.residual < cfg.tol.residual_tol) found[k] = std::move(mv);
  });

  std::vector<MUVector> accepted;
  for (auto& f : found)
    if (f) accepted.push_back(std::move(*f));
  return dedupe(accepted, cfg.tol.cluster_tol);
}

std::vector<Basis> extract_bases(const std::vector<MUVector>& vectors, const Tolerances& tol) {
  const int n = static_cast<int>(vectors.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      adj[i][j] = adj[j][i] = std::abs(inner(vectors[i].vector, vectors[j].vector)) < tol.eq_tol;

  std::vector<Basis> out;
  Basis current{};
  // Extend cliques with increasing indices; candidates are common neighbours
  // above the last chosen vertex.
  std::function<void(int, const std::vector<int>&)> grow = [&](int depth,
                                                               const std::vector<int>& cand) {
    if (depth == 6) {
      out.push_back(current);
      return;
    }
    if (static_cast<int>(cand.size()) < 6 - depth) return;
    for (size_t k = 0; k < cand.size(); ++k) {
      const int v = cand[k];
      current[depth] = v;
      std::vector<int> next;
      for (size_t m = k + 1; m < cand.size(); ++m)
        if (adj[v][cand[m]]) next.push_back(cand[m]);
      grow(depth + 1, next);
    }
  };
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  grow(0, all);
  return out;
}

TripleCertificate certify_triple(const CMat6& h, const std::vector<MUVector>& vectors,
                                 const Basis& basis, const Tolerances& tol) {
  TripleCertificate c;
  for (int i = 0; i < 6; ++i) {
    const ColVec6& bi = vectors.at(basis[i]).vector;
    c.max_norm_defect = std::max(c.max_norm_defect, std::abs(bi.data().norm() - 1.0));
    for (int k = 0; k < kOrder; ++k) {
      c.max_unbias_identity =
          std::max(c.max_unbias_identity, std::abs(6.0 * std::norm(bi[k]) - 1.0));
    }
    c.max_unbias_h = std::max(c.max_unbias_h, mu_residual(h, bi));
    for (int j = i + 1; j < 6; ++j) {
      c.max_overlap =
          std::max(c.max_overlap, std::abs(inner(bi, vectors.at(basis[j]).vector)));
    }
  }
  c.ok = c.max_overlap < tol.eq_tol && c.max_norm_defect < tol.eq_tol &&
         c.max_unbias_identity < tol.residual_tol && c.max_unbias_h < tol.residual_tol;
  return c;
}

std::vector<ScanRow> scan_m6(const std::vector<double>& t_values, const OptimConfig& cfg) {
  cfg.validate();
  std::vector<ScanRow> rows;
  rows.reserve(t_values.size());
  for (double t : t_values) {
    const auto start = std::chrono::steady_clock::now();
    ScanRow row;
    row.t = t;
    row.a = std::polar(1.0, t);
    row.starts = cfg.starts;
    row.seed = cfg.seed;
    try {
      const CMat6 h = m6(t, cfg.tol);
      const std::vector<MUVector> vecs = find_mu_vectors(h, cfg);
      const std::vector<Basis> bases = extract_bases(vecs, cfg.tol);
      row.n_mu_vectors = static_cast<int>(vecs.size());
      row.n_bases = static_cast<int>(bases.size());
      for (const Basis& b : bases) row.n_triples += certify_triple(h, vecs, b, cfg.tol).ok;
      for (const MUVector& v : vecs) row.max_residual = std::max(row.max_residual, v.residual);
      row.valid = true;
    } catch (const DomainError& e) {
      row.error = e.what();
    } catch (const SolveError& e) {
      row.error = e.what();
    }
    row.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows, bool record_timing) {
  out << kScanCsvHeader << '\n';
  char buf[512];
  for (const ScanRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", r.t, r.a.real(), r.a.imag());
    out << buf;
    if (r.valid) {
      std::snprintf(buf, sizeof buf, "%d,%d,%d,%.6e,", r.n_mu_vectors, r.n_bases, r.n_triples,
                    r.max_residual);
    } else {
      std::snprintf(buf, sizeof buf, "NA,NA,NA,NA,");
    }
    out << buf;
    std::snprintf(buf, sizeof buf, "%d,%llu,%.6f\n", r.starts,
                  static_cast<unsigned long long>(r.seed), record_timing ? r.wall_time : 0.0);
    out << buf;
  }
}

void write_scan_plot(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "t,n_mu_vectors\n";
  char buf[128];
  for (const ScanRow& r : rows) {
    if (r.valid) {
      std::snprintf(buf, sizeof buf, "%.17g,%d\n", r.t, r.n_mu_vectors);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,NA\n", r.t);
    }
    out << buf;
  }
}

}  // namespace mub6
