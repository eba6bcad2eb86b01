#include "gfortho/io.hpp"

#include <fstream>
#include <sstream>

namespace gfo::io {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(Errc::Parse, what);
}

std::size_t get_size(const json& j, const char* key) {
  require(j.contains(key) && j.at(key).is_number_unsigned(), std::string("missing or invalid \"") + key + "\"");
  return j.at(key).get<std::size_t>();
}

Field field_of(const json& j, const Field* fallback) {
  if (j.contains("field")) return field_from_json(j.at("field"));
  require(fallback != nullptr, "document has no \"field\" and none was given");
  return *fallback;
}

}  // namespace

json to_json(const Field& f) {
  json j{{"p", f.p()}, {"m", f.m()}};
  j["modulus"] = f.modulus();
  return j;
}

Field field_from_json(const json& j) {
  require(j.is_object(), "field must be an object");
  const auto p = get_size(j, "p");
  const unsigned m = j.contains("m") ? static_cast<unsigned>(get_size(j, "m")) : 1u;
  std::optional<std::vector<std::uint32_t>> modulus;
  if (j.contains("modulus") && !j.at("modulus").empty())
    modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
  return Field::make(p, m, modulus);
}

json elem_to_json(const Field& f, Elem e) {
  if (f.is_prime_field()) return e;
  return f.digits(e);
}

Elem elem_from_json(const Field& f, const json& j) {
  if (f.is_prime_field()) {
    require(j.is_number_unsigned(), "element must be a non-negative integer");
    const auto v = j.get<std::uint64_t>();
    require(v < f.p(), "element out of range: " + std::to_string(v));
    return static_cast<Elem>(v);
  }
  require(j.is_array(), "extension-field element must be an array");
  const auto d = j.get<std::vector<std::uint32_t>>();
  return f.from_digits(d);
}

json to_json(const FMatrix& m, bool with_field) {
  json data = json::array();
  for (Elem e : m.data()) data.push_back(elem_to_json(m.field(), e));
  json j{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
  if (with_field) j["field"] = to_json(m.field());
  return j;
}

FMatrix matrix_from_json(const json& j, const Field* fallback) {
  require(j.is_object(), "matrix must be an object");
  const Field f = field_of(j, fallback);
  const auto rows = get_size(j, "rows"), cols = get_size(j, "cols");
  require(j.contains("data") && j.at("data").is_array(), "matrix needs \"data\"");
  const auto& data = j.at("data");
  require(data.size() == rows * cols, "data length != rows * cols");
  std::vector<Elem> v;
  v.reserve(data.size());
  for (const auto& e : data) v.push_back(elem_from_json(f, e));
  return FMatrix(f, rows, cols, std::move(v));
}

std::string to_text(const FMatrix& m) {
  if (!m.field().is_prime_field()) throw Error(Errc::Unsupported, "text format is for prime fields only");
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

FMatrix matrix_from_text(const std::string& text, const Field& f) {
  if (!f.is_prime_field()) throw Error(Errc::Unsupported, "text format is for prime fields only");
  std::istringstream in(text);
  std::string line;
  std::vector<Elem> data;
  std::size_t rows = 0, cols = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Elem> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == tok.size() && !tok.empty() && tok[0] != '-', "bad matrix entry \"" + tok + "\"");
      require(v < f.p(), "entry out of range: " + tok);
      row.push_back(static_cast<Elem>(v));
    }
    if (row.empty()) continue;
    if (rows == 0) cols = row.size();
    require(row.size() == cols, "ragged rows in text matrix");
    data.insert(data.end(), row.begin(), row.end());
    ++rows;
  }
  require(rows > 0, "empty matrix");
  return FMatrix(f, rows, cols, std::move(data));
}

json to_json(const LaurentPoly& p) {
  json c = json::array();
  for (Elem e : p.coeffs()) c.push_back(elem_to_json(p.field(), e));
  return json{{"lo", p.lo()}, {"coeffs", std::move(c)}};
}

LaurentPoly laurent_from_json(const json& j, const Field& f) {
  require(j.is_object() && j.contains("lo") && j.at("lo").is_number_integer(), "polynomial needs \"lo\"");
  require(j.contains("coeffs") && j.at("coeffs").is_array(), "polynomial needs \"coeffs\"");
  std::vector<Elem> c;
  for (const auto& e : j.at("coeffs")) c.push_back(elem_from_json(f, e));
  return LaurentPoly(f, j.at("lo").get<int>(), std::move(c));
}

json to_json(const MatPoly& p, bool with_field) {
  json mats = json::array();
  for (const auto& c : p.coeffs()) {
    json flat = json::array();
    for (Elem e : c.data()) flat.push_back(elem_to_json(p.field(), e));
    mats.push_back(std::move(flat));
  }
  json j;
  if (p.rows() == p.cols()) {
    j["n"] = p.rows();
  } else {
    j["rows"] = p.rows();
    j["cols"] = p.cols();
  }
  j["k1"] = p.k1();
  j["coeff_mats"] = std::move(mats);
  if (with_field) j["field"] = to_json(p.field());
  return j;
}

MatPoly matpoly_from_json(const json& j, const Field* fallback) {
  require(j.is_object(), "matrix polynomial must be an object");
  const Field f = field_of(j, fallback);
  std::size_t rows, cols;
  if (j.contains("n")) {
    rows = cols = get_size(j, "n");
  } else {
    rows = get_size(j, "rows");
    cols = get_size(j, "cols");
  }
  require(j.contains("k1") && j.at("k1").is_number_integer(), "matrix polynomial needs \"k1\"");
  require(j.contains("coeff_mats") && j.at("coeff_mats").is_array(), "matrix polynomial needs \"coeff_mats\"");
  std::vector<FMatrix> mats;
  for (const auto& flat : j.at("coeff_mats")) {
    require(flat.is_array() && flat.size() == rows * cols, "coefficient matrix has wrong size");
    std::vector<Elem> v;
    for (const auto& e : flat) v.push_back(elem_from_json(f, e));
    mats.emplace_back(f, rows, cols, std::move(v));
  }
  return MatPoly(f, rows, cols, j.at("k1").get<int>(), std::move(mats));
}

json to_json(const GeneratorSet& g) {
  json gamma = json::array();
  for (std::size_t i = 0; i + 1 < g.n(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < g.degree(); ++k) row.push_back(elem_to_json(g.field(), g.gamma(i, k)));
    gamma.push_back(std::move(row));
  }
  return json{{"field", to_json(g.field())}, {"n", g.n()}, {"N", g.degree()}, {"gamma", std::move(gamma)}};
}

GeneratorSet generators_from_json(const json& j) {
  require(j.is_object() && j.contains("field"), "generator set needs \"field\"");
  const Field f = field_from_json(j.at("field"));
  const auto n = get_size(j, "n"), degree = get_size(j, "N");
  require(n >= 1, "n must be >= 1");
  require(j.contains("gamma") && j.at("gamma").is_array(), "generator set needs \"gamma\"");
  const auto& rows = j.at("gamma");
  require(rows.size() == n - 1, "gamma must have n - 1 rows");
  std::vector<Elem> v;
  for (const auto& row : rows) {
    require(row.is_array() && row.size() == degree, "gamma rows must have N entries");
    for (const auto& e : row) v.push_back(elem_from_json(f, e));
  }
  return GeneratorSet(f, n, degree, std::move(v));
}

json to_json(const Diagnostics& d) {
  return json{{"polynomial_degree_ok", d.polynomial_degree_ok},
              {"u1_is_identity", d.u1_identity},
              {"paraunitary", d.paraunitary},
              {"w0_orthogonal", d.w0_orthogonal},
              {"last_row_nonzero", d.last_row_nonzero},
              {"det_diagnostic", det_status_name(d.det)}};
}

json to_json(const GenerationResult& r) {
  json j = to_json(r.generators);
  j["U"] = to_json(r.u, false);
  j["W0"] = to_json(r.w0, false);
  j["W1"] = to_json(r.w1, false);
  j["mult_count"] = r.mult_count;
  j["diagnostics"] = to_json(r.diagnostics);
  return j;
}

json to_json(const ScreeningReport& r) {
  json dets = json::object();
  for (const auto& [d, k] : r.det_counts) dets[elem_to_json(r.field, d).dump()] = k;
  json j{{"field", to_json(r.field)},
         {"n", r.n},
         {"N", r.degree},
         {"mode", r.mode},
         {"workers", r.workers},
         {"candidates_tried", r.candidates_tried},
         {"failures", r.failures},
         {"successes", r.successes},
         {"distinct_count", r.distinct_count},
         {"det_counts", std::move(dets)},
         {"zero_gamma_identity", r.zero_gamma_identity},
         {"elapsed_seconds", r.elapsed_seconds}};
  if (r.mode == "random") {
    j["seed"] = r.seed;
    j["closure"] = r.closure;
    j["target_count"] = r.target;
  }
  return j;
}

json to_json(const TrialStats& s) {
  return json{{"p", s.p},           {"m", s.m},         {"n", s.n},
              {"N", s.degree},      {"trials", s.trials}, {"seed", s.seed},
              {"failures", s.failures}, {"seconds", s.seconds}};
}

json to_json(const BenchRow& r) {
  return json{{"n", r.n},
              {"N", r.degree},
              {"mult_count", r.mult_count},
              {"envelope", complexity_envelope(r.n, r.degree)},
              {"envelope_applies", r.envelope_applies},
              {"envelope_ok", r.envelope_ok},
              {"seconds", r.seconds}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << content;
}

}  // namespace gfo::io
