#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gfortho/explore.hpp"
#include "gfortho/io.hpp"
#include "gfortho/jl_core.hpp"
#include "gfortho/ortho.hpp"
#include "gfortho/polymat.hpp"
#include "gfortho/prng.hpp"

namespace {

using gfo::io::json;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldOpts {
  std::optional<std::uint64_t> p;
  unsigned m = 1;
  std::vector<std::uint32_t> modulus;
};

struct Opts {
  FieldOpts field;
  std::optional<std::size_t> n, degree;
  std::optional<std::uint64_t> seed;
  std::string gamma_in;
  std::vector<std::string> emit{"w0"};
  std::string format = "json";
  std::string out;
  unsigned workers = 1;
  std::string input;

  std::string mode = "exhaustive";
  std::string closure = "off";
  std::uint64_t target = 0;
  std::uint64_t max_draws = 1'000'000;
  std::uint64_t budget = 10'000'000;
  bool allow_over_budget = false;
  bool zero_gamma_identity = false;
  std::string dump_keys;
  std::string curve_out;

  std::uint64_t trials = 1000;
  std::vector<std::size_t> n_list, degree_list;
};

void add_field(CLI::App* cmd, FieldOpts& f, bool required) {
  auto* o = cmd->add_option("--p", f.p, "field characteristic (prime)");
  if (required) o->required();
  cmd->add_option("--m", f.m, "extension degree")->check(CLI::Range(1u, 31u));
  cmd->add_option("--modulus", f.modulus, "monic modulus, little-endian coefficients, comma separated")
      ->delimiter(',');
}

std::vector<CLI::Option*> workers_flags;

void add_workers(CLI::App* cmd, Opts& o) {
  workers_flags.push_back(cmd->add_option("--workers", o.workers, "worker threads (default: $WORKERS, else 1)")
      ->check(CLI::Range(1u, 1024u)));
}

std::optional<gfo::Field> field_of(const FieldOpts& f) {
  if (!f.p) {
    if (f.m != 1 || !f.modulus.empty()) throw UsageError("--m/--modulus need --p");
    return std::nullopt;
  }
  std::optional<std::vector<std::uint32_t>> mod;
  if (!f.modulus.empty()) mod = f.modulus;
  return gfo::Field::make(*f.p, f.m, mod);
}

void emit_text(const Opts& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    gfo::io::write_file(o.out, text);
}

void emit_json(const Opts& o, const json& j) { emit_text(o, j.dump(2) + "\n"); }

json parse_json_file(const std::string& path) {
  const std::string text = gfo::io::read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw gfo::Error(gfo::Errc::Parse, path + ": " + e.what());
  }
}

// ---- gen ------------------------------------------------------------------

gfo::GeneratorSet load_generators(const Opts& o, const std::optional<gfo::Field>& f) {
  json j = parse_json_file(o.gamma_in);
  if (j.contains("gamma") && j.at("gamma").is_object()) j = j.at("gamma");
  gfo::GeneratorSet g = gfo::io::generators_from_json(j);
  if (f && !(*f == g.field())) throw gfo::Error(gfo::Errc::FieldMismatch, "--p/--m disagree with the gamma file");
  if (o.n && *o.n != g.n()) throw gfo::Error(gfo::Errc::ShapeMismatch, "--n disagrees with the gamma file");
  if (o.degree && *o.degree != g.degree())
    throw gfo::Error(gfo::Errc::ShapeMismatch, "--N disagrees with the gamma file");
  return g;
}

int cmd_gen(const Opts& o) {
  const auto f = field_of(o.field);
  std::optional<gfo::GeneratorSet> g;
  if (!o.gamma_in.empty()) {
    if (o.seed) throw UsageError("--seed and --gamma-in are mutually exclusive");
    g = load_generators(o, f);
  } else {
    if (!f) throw UsageError("--p is required without --gamma-in");
    if (!o.seed) throw UsageError("--seed or --gamma-in is required");
    if (!o.n || !o.degree) throw UsageError("--n and --N are required with --seed");
    if (*o.n < 1) throw UsageError("--n must be >= 1");
    gfo::Prng rng = gfo::Prng::stream(*o.seed, 0);
    g = gfo::GeneratorSet::random(*f, *o.n, *o.degree, rng);
  }

  auto res = gfo::generate(*g);
  if (!res) {
    std::cerr << "error: SingularDelta (column " << res.error().column << ", rank deficit "
              << res.error().rank_deficit << ")\ngenerators: " << gfo::io::to_json(*g).dump() << "\n";
    return kMathFailure;
  }
  const gfo::GenerationResult& r = *res;

  const std::set<std::string> emit(o.emit.begin(), o.emit.end());
  auto matrix_for = [&](const std::string& name) -> gfo::FMatrix {
    if (name == "w0") return r.w0;
    if (name == "w1") return r.w1;
    return gfo::build_circulant(r);
  };

  if (o.format == "text") {
    if (emit.size() != 1 || emit.count("gamma") || emit.count("u") || emit.count("report"))
      throw UsageError("--format text needs exactly one of --emit w0|w1|w");
    emit_text(o, gfo::io::to_text(matrix_for(*emit.begin())));
    return kOk;
  }

  json doc = json::object();
  for (const auto& name : emit) {
    if (name == "gamma")
      doc[name] = gfo::io::to_json(r.generators);
    else if (name == "u")
      doc[name] = gfo::io::to_json(r.u);
    else if (name == "report")
      doc[name] = json{{"mult_count", r.mult_count}, {"diagnostics", gfo::io::to_json(r.diagnostics)}};
    else
      doc[name] = gfo::io::to_json(matrix_for(name));
  }
  emit_json(o, emit.size() == 1 ? doc.begin().value() : doc);
  return kOk;
}

// ---- verify ---------------------------------------------------------------

struct Verdict {
  json report;
  bool pass;
};

Verdict verify_matrix(const gfo::FMatrix& m) {
  if (m.rows() == m.cols()) {
    const auto rep = gfo::verify_orthogonal(m);
    return {json{{"orthogonal", rep.orthogonal},
                 {"symmetric", rep.symmetric},
                 {"det", gfo::io::elem_to_json(m.field(), rep.det)}},
            rep.orthogonal};
  }
  const bool ok = gfo::rows_orthonormal(m);
  return {json{{"rows_orthonormal", ok}}, ok};
}

Verdict verify_matpoly(const gfo::MatPoly& u) {
  if (u.rows() != u.cols()) throw gfo::Error(gfo::Errc::ShapeMismatch, "matrix polynomial must be square");
  const bool para = gfo::is_paraunitary(u).paraunitary;
  const bool u1 = gfo::eval(u, u.field().one()).is_identity();
  const auto det = para && u.k1() >= 0 ? gfo::det_diagnostic(u, u.is_zero() ? 0 : u.k2()) : gfo::DetStatus::Skipped;
  return {json{{"paraunitary", para}, {"u1_is_identity", u1}, {"det_diagnostic", gfo::det_status_name(det)}},
          para && u1};
}

Verdict verify_document(const json& j, const gfo::Field* f) {
  if (!j.is_object()) throw gfo::Error(gfo::Errc::Parse, "expected a JSON object");
  if (j.contains("coeff_mats")) return verify_matpoly(gfo::io::matpoly_from_json(j, f));
  if (j.contains("data")) return verify_matrix(gfo::io::matrix_from_json(j, f));
  if (j.contains("gamma") && j.at("gamma").is_array()) {
    // a generator set verifies by generating from it
    const gfo::GeneratorSet g = gfo::io::generators_from_json(j);
    auto r = gfo::generate(g, {.verify = false, .check_det = true});
    if (!r) return {json{{"singular_delta", true}}, false};
    auto v = verify_matpoly(r->u);
    auto w = verify_matrix(r->w0);
    v.report["w0"] = w.report;
    return {v.report, v.pass && w.pass};
  }
  // multi-artifact document from gen
  json out = json::object();
  bool pass = true, any = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "report" || !value.is_object()) continue;
    auto v = verify_document(value, f);
    out[key] = v.report;
    pass = pass && v.pass;
    any = true;
  }
  if (!any) throw gfo::Error(gfo::Errc::Parse, "nothing to verify in document");
  return {out, pass};
}

int cmd_verify(const Opts& o) {
  const auto f = field_of(o.field);
  const std::string text = gfo::io::read_file(o.input);
  Verdict v;
  if (o.format == "text") {
    if (!f) throw UsageError("--format text needs --p");
    v = verify_matrix(gfo::io::matrix_from_text(text, *f));
  } else {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw gfo::Error(gfo::Errc::Parse, o.input + ": " + e.what());
    }
    v = verify_document(j, f ? &*f : nullptr);
  }
  emit_json(o, v.report);
  return v.pass ? kOk : kMathFailure;
}

// ---- recover --------------------------------------------------------------

int cmd_recover(const Opts& o) {
  const auto f = field_of(o.field);
  json j = parse_json_file(o.input);
  if (j.contains("u") && j.at("u").is_object()) j = j.at("u");
  const gfo::MatPoly u = gfo::io::matpoly_from_json(j, f ? &*f : nullptr);
  const std::size_t degree = o.degree ? *o.degree : static_cast<std::size_t>(std::max(0, u.k2()));
  emit_json(o, gfo::io::to_json(gfo::recover(u, degree)));
  return kOk;
}

// ---- screen / stats / bench -----------------------------------------------

int cmd_screen(const Opts& o) {
  const auto f = field_of(o.field);
  if (!o.n || !o.degree) throw UsageError("--n and --N are required");
  if (*o.n < 1) throw UsageError("--n must be >= 1");
  const bool keep = !o.dump_keys.empty();

  auto finish = [&](const gfo::ScreeningReport& rep, int code) {
    if (keep) gfo::io::write_file(o.dump_keys, gfo::key_dump(rep));
    if (!o.curve_out.empty()) gfo::io::write_file(o.curve_out, gfo::rate_curve_csv(rep));
    json j = gfo::io::to_json(rep);
    if (keep) j["key_dump"] = o.dump_keys;
    emit_json(o, j);
    return code;
  };

  if (o.mode == "exhaustive") {
    if (o.seed || o.target) throw UsageError("--seed/--target-count apply to --mode random only");
    gfo::ExhaustiveConfig cfg{.field = *f,
                              .n = *o.n,
                              .degree = *o.degree,
                              .workers = o.workers,
                              .budget = o.budget,
                              .allow_over_budget = o.allow_over_budget,
                              .keep_keys = keep,
                              .zero_gamma_identity = o.zero_gamma_identity};
    return finish(gfo::screen_exhaustive(cfg), kOk);
  }
  if (!o.seed) throw UsageError("--mode random requires --seed");
  if (o.target == 0) throw UsageError("--mode random requires --target-count > 0");
  gfo::RandomConfig cfg{.field = *f,
                        .n = *o.n,
                        .degree = *o.degree,
                        .target = o.target,
                        .closure = o.closure == "on",
                        .seed = *o.seed,
                        .max_draws = o.max_draws,
                        .workers = o.workers,
                        .keep_keys = keep,
                        .zero_gamma_identity = o.zero_gamma_identity};
  auto r = gfo::screen_random(cfg);
  if (!r) {
    std::cerr << "error: TargetNotReached (" << r.error().partial.distinct_count << " of " << o.target
              << " after " << r.error().partial.candidates_tried << " draws)\n";
    return finish(r.error().partial, kMathFailure);
  }
  return finish(*r, kOk);
}

int cmd_stats(const Opts& o) {
  const auto f = field_of(o.field);
  if (!o.n || !o.degree) throw UsageError("--n and --N are required");
  if (*o.n < 1) throw UsageError("--n must be >= 1");
  if (!o.seed) throw UsageError("stats requires --seed");
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  const auto s = gfo::failure_trials(
      {.field = *f, .n = *o.n, .degree = *o.degree, .trials = o.trials, .seed = *o.seed, .workers = o.workers});
  emit_json(o, gfo::io::to_json(s));
  return kOk;
}

int cmd_bench(const Opts& o) {
  const auto f = field_of(o.field);
  if (!o.seed) throw UsageError("bench requires --seed");
  for (auto n : o.n_list)
    if (n < 1) throw UsageError("--n entries must be >= 1");
  const auto rows = gfo::bench_multiplications(*f, o.n_list, o.degree_list, *o.seed);
  json arr = json::array();
  bool ok = true;
  for (const auto& r : rows) {
    arr.push_back(gfo::io::to_json(r));
    ok = ok && r.envelope_ok;
  }
  emit_json(o, json{{"field", gfo::io::to_json(*f)}, {"seed", *o.seed}, {"rows", std::move(arr)}});
  return ok ? kOk : kMathFailure;
}

int exit_code_for(gfo::Errc c) {
  switch (c) {
    case gfo::Errc::NotParaunitary:
    case gfo::Errc::NoAnchorColumn:
      return kMathFailure;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal and paraunitary matrices over finite fields"};
  app.require_subcommand(1);
  Opts o;

  auto* gen = app.add_subcommand("gen", "generate U(t), W0, W1 and W from generators");
  add_field(gen, o.field, false);
  gen->add_option("--n", o.n, "matrix size");
  gen->add_option("--N", o.degree, "generator degree");
  gen->add_option("--seed", o.seed, "PRNG seed for random generators");
  gen->add_option("--gamma-in", o.gamma_in, "generator set JSON file")->check(CLI::ExistingFile);
  gen->add_option("--emit", o.emit, "artifacts to emit")
      ->delimiter(',')
      ->check(CLI::IsMember({"gamma", "u", "w0", "w1", "w", "report"}));
  gen->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
  gen->add_option("--out", o.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check a matrix or matrix polynomial file");
  add_field(verify, o.field, false);
  verify->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  verify->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", o.out);

  auto* recover = app.add_subcommand("recover", "read the generators back from U(t)");
  add_field(recover, o.field, false);
  recover->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  recover->add_option("--N", o.degree, "generator degree (default: degree of U)");
  recover->add_option("--out", o.out);

  auto* screen = app.add_subcommand("screen", "screen generator space for distinct W0");
  add_field(screen, o.field, true);
  screen->add_option("--n", o.n)->required();
  screen->add_option("--N", o.degree)->required();
  screen->add_option("--mode", o.mode)->check(CLI::IsMember({"exhaustive", "random"}));
  screen->add_option("--closure", o.closure)->check(CLI::IsMember({"on", "off"}));
  screen->add_option("--target-count", o.target);
  screen->add_option("--seed", o.seed);
  screen->add_option("--max-draws", o.max_draws);
  screen->add_option("--budget", o.budget, "max exhaustive candidates");
  screen->add_flag("--allow-over-budget", o.allow_over_budget);
  screen->add_flag("--zero-gamma-identity", o.zero_gamma_identity, "record I_n for the all-zero generator set");
  screen->add_option("--dump-keys", o.dump_keys, "write sorted hex keys to this file");
  screen->add_option("--curve-out", o.curve_out, "write the draws,distinct CSV to this file");
  screen->add_option("--out", o.out);
  add_workers(screen, o);

  auto* stats = app.add_subcommand("stats", "count singular-Delta failures over seeded trials");
  add_field(stats, o.field, true);
  stats->add_option("--n", o.n)->required();
  stats->add_option("--N", o.degree)->required();
  stats->add_option("--trials", o.trials);
  stats->add_option("--seed", o.seed);
  stats->add_option("--out", o.out);
  add_workers(stats, o);

  auto* bench = app.add_subcommand("bench", "count field multiplications per generation");
  add_field(bench, o.field, true);
  bench->add_option("--n", o.n_list, "comma separated sizes")->required()->delimiter(',');
  bench->add_option("--N", o.degree_list, "comma separated degrees")->required()->delimiter(',');
  bench->add_option("--seed", o.seed);
  bench->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const bool flag_given = std::any_of(workers_flags.begin(), workers_flags.end(), [](auto* f) { return f->count() > 0; });
    if (const char* env = std::getenv("WORKERS"); env && !flag_given) {
      const std::string s = env;
      unsigned long w = 0;
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 4 ||
          (w = std::stoul(s)) < 1 || w > 1024)
        throw UsageError("WORKERS must be an integer in [1, 1024]");
      o.workers = static_cast<unsigned>(w);
    }
    if (*gen) return cmd_gen(o);
    if (*verify) return cmd_verify(o);
    if (*recover) return cmd_recover(o);
    if (*screen) return cmd_screen(o);
    if (*stats) return cmd_stats(o);
    if (*bench) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const gfo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error: Parse: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: verification failed: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}
