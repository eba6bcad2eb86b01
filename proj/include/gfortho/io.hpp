#pragma once

#include <string>

#include <json.hpp>

#include "gfortho/explore.hpp"
#include "gfortho/field.hpp"
#include "gfortho/jl_core.hpp"
#include "gfortho/linalg.hpp"
#include "gfortho/polymat.hpp"

// JSON and text encodings. Field elements are integers for GF(p) and arrays
// of m little-endian power-basis coefficients for GF(p^m). Matrices are
// {"rows", "cols", "data"} with row-major data; documents written by this
// library also carry a "field" object so they can be read back standalone.
namespace gfo::io {

using json = nlohmann::json;

json to_json(const Field& f);
Field field_from_json(const json& j);

json elem_to_json(const Field& f, Elem e);
Elem elem_from_json(const Field& f, const json& j);

json to_json(const FMatrix& m, bool with_field = true);
// Uses the document's "field" when present, otherwise `fallback`.
FMatrix matrix_from_json(const json& j, const Field* fallback = nullptr);

// One row per line, space-separated integers. Prime fields only.
std::string to_text(const FMatrix& m);
FMatrix matrix_from_text(const std::string& text, const Field& f);

json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j, const Field& f);

// {"n", "k1", "coeff_mats": [[row-major entries], ...]}; "rows"/"cols"
// replace "n" for rectangular polynomials.
json to_json(const MatPoly& p, bool with_field = true);
MatPoly matpoly_from_json(const json& j, const Field* fallback = nullptr);

// {"field", "n", "N", "gamma": [[gamma_{i,1}, ..., gamma_{i,N}], ...]}
json to_json(const GeneratorSet& g);
GeneratorSet generators_from_json(const json& j);

json to_json(const Diagnostics& d);
json to_json(const GenerationResult& r);

// Screening report; det_counts is keyed by the element's JSON text.
json to_json(const ScreeningReport& r);
json to_json(const TrialStats& s);
json to_json(const BenchRow& r);

// Reads a whole file; throws Error(Parse) when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gfo::io
