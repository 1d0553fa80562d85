#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mub6/analysis.hpp"
#include "mub6/core.hpp"
#include "mub6/equivalence.hpp"
#include "mub6/refutation.hpp"

namespace mub6 {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix interchange format:
///   {"label": "...", "matrix": [[[re, im], ... 6], ... 6]}
/// Doubles are written with 17 significant digits, so a write/read cycle is
/// bit-exact.
std::string matrix_to_json(const CMat6& m);

/// Throws ParseError on malformed JSON, a wrong shape, or non-finite values.
CMat6 matrix_from_json(std::string_view text);

/// Reads a matrix file; IoError if it cannot be opened.
CMat6 read_matrix_file(const std::string& path);

nlohmann::json complex_json(Complex z);
nlohmann::json matrix_json(const CMat6& m);
nlohmann::json record_json(const TransformRecord& r);
nlohmann::json loc_json(const SubmatrixLoc& loc);
nlohmann::json lemma_form_json(const LemmaForm& f);
nlohmann::json analysis_json(const AnalysisReport& r);
nlohmann::json lemma_report_json(const LemmaReport& r);
nlohmann::json witness_json(const ThirdColumnWitness& w);

}  // namespace mub6
