#include "mub6/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "mub6/analysis.hpp"
#include "mub6/equivalence.hpp"
#include "mub6/families.hpp"
#include "mub6/json_io.hpp"
#include "mub6/musearch.hpp"
#include "mub6/refutation.hpp"

namespace mub6 {

namespace {

constexpr double kDegToRad = kPi / 180.0;

struct GlobalFlags {
  std::optional<double> tol;
  bool json = false;
  std::uint64_t seed = 0;
};

Tolerances resolve_tolerances(const GlobalFlags& g) {
  if (g.tol) return Tolerances::with_eq_tol(*g.tol);
  if (const char* env = std::getenv("MUB6_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw InvalidInput("MUB6_TOL is not a number");
    return Tolerances::with_eq_tol(v);
  }
  return {};
}

std::string fmt_double(double v, int digits = 17) {
  std::ostringstream ss;
  ss << std::setprecision(digits) << v;
  return ss.str();
}

std::string fmt_complex(Complex z) {
  std::ostringstream ss;
  ss << std::setprecision(17) << z.real() << (z.imag() < 0 ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return ss.str();
}

std::string fmt_residual(double v) {
  std::ostringstream ss;
  ss << std::scientific << std::setprecision(3) << v;
  return ss.str();
}

const char* mark(bool ok) { return ok ? "PASS" : "FAIL"; }

// Angle from either a radians option or its degrees twin.
double angle_arg(const std::optional<double>& rad, const std::optional<double>& deg,
                 const char* name) {
  if (rad && deg) throw CLI::ValidationError(std::string("give either --") + name + " or --" + name + "-deg");
  if (rad) return *rad;
  if (deg) return *deg * kDegToRad;
  throw CLI::RequiredError(std::string("--") + name);
}

void print_lemma_report_text(std::ostream& out, const LemmaReport& r) {
  out << "M6 counterexample at t = " << fmt_double(r.t) << " (a = " << fmt_complex(r.a) << ")\n";
  out << "  [" << mark(r.is_hadamard_ok) << "] transformed matrix is complex Hadamard"
      << "  residual " << fmt_residual(r.hadamard_residual) << "\n";
  out << "  [" << mark(r.lemma_form_ok)
      << "] dephased, upper-left 3x2 block = (1 1; 1 1; 1 -1)/sqrt(6), (y,x) = (1,-1)"
      << "  residual " << fmt_residual(r.lemma_form_residual) << "\n";
  out << "  [" << mark(r.tail_ok) << "] column 2 rows 4..6 = (-1, s, -s)/sqrt(6)"
      << "  s = " << fmt_complex(r.s) << "\n";
  out << "      s vs conj(a): " << fmt_residual(std::abs(r.s - std::conj(r.a))) << "\n";
  const bool no_zero = r.min_third_col_modulus > kInvSqrt6 - 1e-9;
  out << "  [" << mark(no_zero) << "] column 3 has no vanishing entry"
      << "  min modulus " << fmt_double(r.min_third_col_modulus) << " (1/sqrt(6) = "
      << fmt_double(kInvSqrt6) << ")\n";
  out << "      moduli:";
  for (double m : r.third_col_moduli) out << ' ' << fmt_double(m, 12);
  out << "\n";
  out << "verdict: " << r.verdict << "\n";
}

int cmd_families(const std::string& family, const std::optional<double>& t,
                 const std::optional<double>& t_deg, double x1, double x2,
                 const std::optional<double>& theta, const Tolerances& tol, std::ostream& out) {
  CMat6 m;
  if (family == "m6") {
    m = m6(angle_arg(t, t_deg, "t"), tol);
  } else if (family == "f6") {
    m = fourier_f6(x1, x2);
  } else if (family == "b6") {
    if (!theta) throw CLI::RequiredError("--theta");
    m = b6(*theta);
  } else {
    m = s6();
  }
  out << matrix_to_json(m);
  return kExitOk;
}

int cmd_check(const std::string& in, const std::string& with, const GlobalFlags& g,
              const Tolerances& tol, std::ostream& out) {
  const CMat6 h = read_matrix_file(in);
  const double ures = unitarity_residual(h);
  const double mres = modulus_residual(h);
  const bool unitary = is_unitary(h, tol);
  const bool hadamard = is_hadamard(h, tol);
  bool pass = hadamard;

  nlohmann::json doc;
  doc["label"] = h.label();
  doc["eq_tol"] = tol.eq_tol;
  doc["is_unitary"] = unitary;
  doc["unitarity_residual"] = ures;
  doc["modulus_residual"] = mres;
  doc["is_hadamard"] = hadamard;
  // {I, H} is a pair of mutually unbiased bases exactly when H is Hadamard.
  doc["mu_with_identity"] = hadamard;

  std::optional<CMat6> other;
  if (!with.empty()) {
    other = read_matrix_file(with);
    const CMat6 overlap(h.data().adjoint() * other->data());
    const bool mu = is_unitary(*other, tol) && is_hadamard(overlap, tol);
    doc["mu_with_other"] = {{"label", other->label()},
                            {"mutually_unbiased", mu},
                            {"overlap_modulus_residual", modulus_residual(overlap)},
                            {"other_unitarity_residual", unitarity_residual(*other)}};
    pass = pass && mu;
  }

  if (g.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << "matrix: " << h.label() << "\n";
    out << "  unitary:  " << (unitary ? "yes" : "no") << "  residual " << fmt_residual(ures) << "\n";
    out << "  hadamard: " << (hadamard ? "yes" : "no") << "  modulus residual "
        << fmt_residual(mres) << "\n";
    out << "  mutually unbiased to identity: " << (hadamard ? "yes" : "no") << "\n";
    if (other) {
      out << "  mutually unbiased to " << other->label() << ": "
          << (doc["mu_with_other"]["mutually_unbiased"].get<bool>() ? "yes" : "no") << "\n";
    }
  }
  return pass ? kExitOk : kExitVerdict;
}

int cmd_normalize(const std::string& in, bool lemma, const GlobalFlags& g, const Tolerances& tol,
                  std::ostream& out) {
  const CMat6 h = read_matrix_file(in);
  if (!lemma) {
    const Dephased d = dephase(h, tol);
    if (g.json) {
      out << nlohmann::json{{"matrix", matrix_json(d.matrix)}, {"record", record_json(d.record)}}.dump(2)
          << "\n";
    } else {
      out << matrix_to_json(d.matrix);
    }
    return kExitOk;
  }
  const std::optional<LemmaForm> form = to_lemma_form(h, tol);
  if (g.json) {
    out << (form ? lemma_form_json(*form) : nlohmann::json{{"found", false}}).dump(2) << "\n";
    return kExitOk;
  }
  if (!form) {
    out << "NONE\n";
    return kExitOk;
  }
  out << "y = " << form->y << "\nx = " << form->x << "\n";
  out << "s = " << (form->s ? fmt_complex(*form->s) : std::string("n/a (rank-one block)")) << "\n";
  out << "block rows:";
  for (int r : form->block_rows) out << ' ' << r + 1;
  out << "\nblock cols:";
  for (int c : form->block_cols) out << ' ' << c + 1;
  out << "\nrecord: " << record_json(form->record).dump() << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& in, const std::string& section, const Tolerances& tol,
                std::ostream& out) {
  const CMat6 h = read_matrix_file(in);
  ReportSection s = ReportSection::full;
  if (section == "real") s = ReportSection::real;
  if (section == "h2") s = ReportSection::h2;
  if (section == "product") s = ReportSection::product;
  out << analysis_json(analyze(h, tol, s)).dump(2) << "\n";
  return kExitOk;
}

int cmd_refute(double t, bool text, bool witness, int witness_starts, const GlobalFlags& g,
               const Tolerances& tol, std::ostream& out) {
  const LemmaReport rep = run_counterexample(t, tol);
  std::optional<ThirdColumnWitness> w;
  if (witness) w = third_column_witness(rep.s, tol, g.seed, witness_starts);
  if (g.json && !text) {
    nlohmann::json doc = lemma_report_json(rep);
    if (w) doc["witness"] = witness_json(*w);
    out << doc.dump(2) << "\n";
  } else {
    print_lemma_report_text(out, rep);
    if (w) {
      out << "independent third column for this s (start " << w->start << "): residuals "
          << fmt_residual(w->residual_c1) << ", " << fmt_residual(w->residual_c2)
          << ", min modulus " << fmt_double(w->min_modulus) << "\n";
    }
  }
  return rep.verdict == kVerdictRefuted ? kExitOk : kExitVerdict;
}

struct ScanArgs {
  std::string family = "m6";
  double t_from = kPi / 2;
  double t_to = kPi;
  int steps = 50;
  int starts = 2000;
  int max_iters = 500;
  int threads = 0;
  std::string out_path;
  std::string plot_path;
  bool timing = false;
};

int cmd_scan(const ScanArgs& a, const GlobalFlags& g, const Tolerances& tol, std::ostream& out) {
  if (a.steps < 1) throw CLI::ValidationError("--steps must be >= 1");
  std::vector<double> ts;
  for (int k = 1; k <= a.steps; ++k) ts.push_back(a.t_from + k * (a.t_to - a.t_from) / a.steps);
  OptimConfig cfg;
  cfg.starts = a.starts;
  cfg.max_iters = a.max_iters;
  cfg.seed = g.seed;
  cfg.tol = tol;
  cfg.threads = a.threads;
  const std::vector<ScanRow> rows = scan_m6(ts, cfg);

  if (a.out_path.empty()) {
    write_scan_csv(out, rows, a.timing);
  } else {
    std::ofstream f(a.out_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + a.out_path);
    write_scan_csv(f, rows, a.timing);
    if (!f) throw IoError("failed writing " + a.out_path);
  }
  if (!a.plot_path.empty()) {
    std::ofstream f(a.plot_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + a.plot_path);
    write_scan_plot(f, rows);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mub6: order-6 complex Hadamard matrices and mutually unbiased bases"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--tol", g.tol, "equality tolerance eq_tol (default 1e-9, env MUB6_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "machine-readable JSON output");
  app.add_option("--seed", g.seed, "seed for multi-start searches");

  // families show
  auto* families = app.add_subcommand("families", "construct members of the built-in families");
  families->require_subcommand(1);
  auto* show = families->add_subcommand(
      "show", "print a family member in the JSON matrix format (m6: symmetric M6(a) family; "
              "f6: two-parameter Fourier family; b6: self-adjoint B6 family; s6: Tao's matrix)");
  std::string family;
  std::optional<double> t, t_deg, theta;
  double x1 = 0, x2 = 0;
  show->add_option("--family", family, "m6 | f6 | b6 | s6")
      ->required()
      ->check(CLI::IsMember({"m6", "f6", "b6", "s6"}));
  show->add_option("--t", t, "M6 angle t in radians, a = e^{it}");
  show->add_option("--t-deg", t_deg, "M6 angle t in degrees");
  show->add_option("--x1", x1, "F6 first parameter (radians)");
  show->add_option("--x2", x2, "F6 second parameter (radians)");
  show->add_option("--theta", theta, "B6 parameter (radians)");

  // check
  auto* check = app.add_subcommand(
      "check", "test unitarity and the Hadamard property; {I, H} is then a mutually unbiased pair");
  std::string check_in, check_with;
  check->add_option("--in", check_in, "matrix JSON file")->required();
  check->add_option("--with", check_with, "second matrix; also test that the two bases are unbiased");

  // normalize
  auto* normalize = app.add_subcommand(
      "normalize", "dephase a matrix, or search for the real 3x2 normal form (--lemma-form)");
  std::string norm_in;
  bool lemma = false;
  normalize->add_option("--in", norm_in, "matrix JSON file")->required();
  normalize->add_flag("--lemma-form", lemma,
                      "find an equivalent dephased matrix with a real upper-left 3x2 block");

  // analyze
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "real entries, real 3x2 submatrices, 2x2 Hadamard submatrices, H2-reducibility, "
                 "3x3 unitary submatrices and product columns");
  std::string an_in, an_report = "full";
  analyze_cmd->add_option("--in", an_in, "matrix JSON file")->required();
  analyze_cmd->add_option("--report", an_report, "full | real | h2 | product")
      ->check(CLI::IsMember({"full", "real", "h2", "product"}));

  // refute
  auto* refute = app.add_subcommand(
      "refute", "transform M6(e^{it}) into the real 3x2 normal form and show that its third "
                "column has no zero entry; exit 0 when the claim that two entries vanish fails");
  std::optional<double> rt, rt_deg;
  bool text = false, witness = false;
  int witness_starts = 256;
  refute->add_option("--t", rt, "angle t in radians");
  refute->add_option("--t-deg", rt_deg, "angle t in degrees");
  refute->add_flag("--text", text, "human-readable audit (default unless --json)");
  refute->add_flag("--witness", witness,
                   "also search an independent unimodular third column for the recovered s");
  refute->add_option("--witness-starts", witness_starts, "start budget for --witness")
      ->check(CLI::PositiveNumber);

  // scan
  auto* scan = app.add_subcommand(
      "scan", "count vectors unbiased to I and M6(a), and MU-triple completions, over a t grid");
  ScanArgs sa;
  scan->add_option("--family", sa.family, "only m6")->check(CLI::IsMember({"m6"}));
  scan->add_option("--t-from", sa.t_from, "grid start (excluded), radians");
  scan->add_option("--t-to", sa.t_to, "grid end (included), radians");
  scan->add_option("--steps", sa.steps, "number of grid points");
  scan->add_option("--starts", sa.starts, "multi-start budget per point")->check(CLI::PositiveNumber);
  scan->add_option("--max-iters", sa.max_iters, "descent iterations per start")
      ->check(CLI::PositiveNumber);
  scan->add_option("--threads", sa.threads, "worker threads (0 = all cores)");
  scan->add_option("--out", sa.out_path, "CSV output path (default stdout)");
  scan->add_option("--plot", sa.plot_path, "also write t,n_mu_vectors to this path");
  scan->add_flag("--timing", sa.timing,
                 "record measured wall_time_s (otherwise 0, keeping output reproducible)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Tolerances tol = resolve_tolerances(g);
    if (show->parsed()) return cmd_families(family, t, t_deg, x1, x2, theta, tol, out);
    if (check->parsed()) return cmd_check(check_in, check_with, g, tol, out);
    if (normalize->parsed()) return cmd_normalize(norm_in, lemma, g, tol, out);
    if (analyze_cmd->parsed()) return cmd_analyze(an_in, an_report, tol, out);
    if (refute->parsed()) return cmd_refute(angle_arg(rt, rt_deg, "t"), text, witness,
                                            witness_starts, g, tol, out);
    if (scan->parsed()) return cmd_scan(sa, g, tol, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: parse failure: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolveError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const SearchFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerdict;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace mub6
