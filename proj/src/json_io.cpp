#include "mub6/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mub6 {

using nlohmann::json;

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

json one_based(const std::vector<int>& idx) {
  json arr = json::array();
  for (int i : idx) arr.push_back(i + 1);
  return arr;
}

json pairs_json(const PairPartition& p) {
  json arr = json::array();
  for (const auto& [a, b] : p) arr.push_back({a + 1, b + 1});
  return arr;
}

}  // namespace

std::string matrix_to_json(const CMat6& m) {
  std::string out = "{\"label\": ";
  out += json(m.label()).dump();
  out += ", \"matrix\": [";
  for (int i = 0; i < kOrder; ++i) {
    out += i == 0 ? "\n  [" : ",\n  [";
    for (int j = 0; j < kOrder; ++j) {
      if (j > 0) out += ", ";
      out += '[';
      append_double(out, m(i, j).real());
      out += ", ";
      append_double(out, m(i, j).imag());
      out += ']';
    }
    out += ']';
  }
  out += "\n]}\n";
  return out;
}

CMat6 matrix_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ParseError("\"label\" must be a string");
    label = doc["label"].get<std::string>();
  }
  if (!doc.contains("matrix")) throw ParseError("missing \"matrix\" key");
  const json& rows = doc["matrix"];
  if (!rows.is_array() || rows.size() != kOrder) throw ParseError("\"matrix\" must hold 6 rows");
  Mat6 m;
  for (int i = 0; i < kOrder; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != kOrder) {
      throw ParseError("row " + std::to_string(i + 1) + " must hold 6 entries");
    }
    for (int j = 0; j < kOrder; ++j) {
      const json& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") must be [re, im]");
      }
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  try {
    return CMat6(m, label);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
}

CMat6 read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return matrix_from_json(ss.str());
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMat6& m) {
  json rows = json::array();
  for (int i = 0; i < kOrder; ++i) {
    json row = json::array();
    for (int j = 0; j < kOrder; ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return {{"label", m.label()}, {"matrix", rows}};
}

json record_json(const TransformRecord& r) {
  json out;
  json rp = json::array(), cp = json::array(), rph = json::array(), cph = json::array();
  for (int i = 0; i < kOrder; ++i) {
    rp.push_back(r.row_perm[i] + 1);
    cp.push_back(r.col_perm[i] + 1);
    rph.push_back(complex_json(r.row_phases[i]));
    cph.push_back(complex_json(r.col_phases[i]));
  }
  out["row_perm"] = rp;
  out["col_perm"] = cp;
  out["row_phases"] = rph;
  out["col_phases"] = cph;
  return out;
}

json loc_json(const SubmatrixLoc& loc) {
  return {{"rows", one_based(loc.rows)}, {"cols", one_based(loc.cols)}};
}

json lemma_form_json(const LemmaForm& f) {
  json out;
  out["found"] = true;
  out["y"] = f.y;
  out["x"] = f.x;
  out["s"] = f.s ? complex_json(*f.s) : json(nullptr);
  out["rank_one"] = f.rank_one;
  out["block_rows"] = one_based({f.block_rows.begin(), f.block_rows.end()});
  out["block_cols"] = one_based({f.block_cols.begin(), f.block_cols.end()});
  out["record"] = record_json(f.record);
  out["matrix"] = matrix_json(f.matrix);
  return out;
}

json analysis_json(const AnalysisReport& r) {
  json out;
  out["label"] = r.label;
  auto locs = [](const std::vector<SubmatrixLoc>& v) {
    json arr = json::array();
    for (const auto& l : v) arr.push_back(loc_json(l));
    return arr;
  };
  if (r.real_entry_count) {
    out["real_entry_count"] = *r.real_entry_count;
    out["exceeds_real_entry_bound"] = *r.exceeds_real_entry_bound;
    out["real_3x2_raw"] = locs(*r.real_3x2_raw);
    out["real_3x2_rephased"] = locs(*r.real_3x2_rephased);
  }
  if (r.h2_submatrix_count) {
    out["h2_submatrix_count"] = *r.h2_submatrix_count;
    if (r.h2_reducible_partition) {
      out["h2_reducible_partition"] = {{"rows", pairs_json(r.h2_reducible_partition->rows)},
                                       {"cols", pairs_json(r.h2_reducible_partition->cols)}};
    } else {
      out["h2_reducible_partition"] = nullptr;
    }
    out["unitary_3x3"] = locs(*r.unitary_3x3);
  }
  if (r.product_triple_found) out["product_triple_found"] = *r.product_triple_found;
  return out;
}

json lemma_report_json(const LemmaReport& r) {
  json out;
  out["t"] = r.t;
  out["a"] = complex_json(r.a);
  out["is_hadamard_ok"] = r.is_hadamard_ok;
  out["hadamard_residual"] = r.hadamard_residual;
  out["lemma_form_ok"] = r.lemma_form_ok;
  out["lemma_form_residual"] = r.lemma_form_residual;
  out["tail_ok"] = r.tail_ok;
  out["s"] = complex_json(r.s);
  out["s_canonical"] = r.s_canonical ? complex_json(*r.s_canonical) : json(nullptr);
  out["third_col_moduli"] = r.third_col_moduli;
  out["min_third_col_modulus"] = r.min_third_col_modulus;
  out["verdict"] = r.verdict;
  out["record"] = record_json(r.record);
  out["matrix"] = matrix_json(r.matrix);
  return out;
}

json witness_json(const ThirdColumnWitness& w) {
  json v = json::array();
  for (int i = 0; i < kOrder; ++i) v.push_back(complex_json(w.v[i]));
  return {{"s", complex_json(w.s)},
          {"v", v},
          {"residual_c1", w.residual_c1},
          {"residual_c2", w.residual_c2},
          {"min_modulus", w.min_modulus},
          {"start", w.start}};
}

}  // namespace mub6
