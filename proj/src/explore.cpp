#include "gfortho/explore.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gfortho/prng.hpp"

namespace gfo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs body(w) for w in [0, workers) on separate threads (inline for one).
template <class Body>
void run_workers(unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// q^k, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t q, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > UINT64_MAX / q) return std::nullopt;
    r *= q;
  }
  return r;
}

const GenerateOptions kScreeningGen{.verify = false, .check_det = false};

bool all_zero(const GeneratorSet& g) {
  return std::all_of(g.values().begin(), g.values().end(), [](Elem e) { return e == 0; });
}

// W0 for one candidate, or nullopt on singular Delta.
std::optional<FMatrix> screen_one(const GeneratorSet& g, bool zero_identity) {
  if (zero_identity && all_zero(g)) return FMatrix::identity(g.field(), g.n());
  auto r = generate(g, kScreeningGen);
  if (!r) return std::nullopt;
  return std::move(r->w0);
}

}  // namespace

bool DedupeSink::insert(const FMatrix& m) {
  OrthoKey key = ortho_key(m);
  if (keys_.count(key)) return false;
  const OrthoReport rep = verify_orthogonal(m);
  if (!rep.orthogonal) throw std::logic_error("DedupeSink: matrix is not orthogonal");
  keys_.emplace(std::move(key), rep.det);
  return true;
}

void DedupeSink::merge(const DedupeSink& other) {
  for (const auto& kv : other.keys_) keys_.insert(kv);
}

std::map<Elem, std::uint64_t> DedupeSink::det_counts() const {
  std::map<Elem, std::uint64_t> out;
  for (const auto& kv : keys_) ++out[kv.second];
  return out;
}

std::vector<OrthoKey> DedupeSink::sorted_keys() const {
  std::vector<OrthoKey> out;
  out.reserve(keys_.size());
  for (const auto& kv : keys_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

ScreeningReport screen_exhaustive(const ExhaustiveConfig& cfg) {
  const auto t0 = Clock::now();
  const Field& f = cfg.field;
  const std::size_t len = (cfg.n - 1) * cfg.degree;
  const auto total = checked_pow(f.q(), len);
  if (!total) throw Error(Errc::BudgetExceeded, "generator space does not fit in 64 bits");
  if (*total > cfg.budget && !cfg.allow_over_budget)
    throw Error(Errc::BudgetExceeded, std::to_string(*total) + " candidates exceed the budget of " +
                                          std::to_string(cfg.budget) + "; pass the override to run anyway");

  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<DedupeSink> sinks(workers);
  std::vector<std::uint64_t> tried(workers, 0), failed(workers, 0);

  run_workers(workers, [&](unsigned w) {
    const std::uint64_t begin = *total / workers * w + std::min<std::uint64_t>(w, *total % workers);
    const std::uint64_t end = begin + *total / workers + (w < *total % workers ? 1 : 0);
    if (begin >= end) return;
    // decode the starting index, last entry least significant
    std::vector<Elem> gamma(len, 0);
    std::uint64_t x = begin;
    for (std::size_t i = len; i-- > 0;) {
      gamma[i] = static_cast<Elem>(x % f.q());
      x /= f.q();
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      auto w0 = screen_one(GeneratorSet(f, cfg.n, cfg.degree, gamma), cfg.zero_gamma_identity);
      ++tried[w];
      if (w0)
        sinks[w].insert(*w0);
      else
        ++failed[w];
      for (std::size_t i = len; i-- > 0;) {
        if (++gamma[i] < f.q()) break;
        gamma[i] = 0;
      }
    }
  });

  DedupeSink all;
  for (const auto& s : sinks) all.merge(s);

  ScreeningReport rep;
  rep.field = f;
  rep.n = cfg.n;
  rep.degree = cfg.degree;
  rep.mode = "exhaustive";
  rep.workers = workers;
  rep.zero_gamma_identity = cfg.zero_gamma_identity;
  for (unsigned w = 0; w < workers; ++w) {
    rep.candidates_tried += tried[w];
    rep.failures += failed[w];
  }
  rep.successes = rep.candidates_tried - rep.failures;
  rep.distinct_count = all.size();
  rep.det_counts = all.det_counts();
  if (cfg.keep_keys) rep.keys = all.sorted_keys();
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

Expected<ScreeningReport, TargetNotReached> screen_random(const RandomConfig& cfg) {
  if (cfg.target == 0) throw Error(Errc::InvalidArgument, "target_count must be > 0");
  const auto t0 = Clock::now();
  const Field& f = cfg.field;
  const unsigned workers = std::max(1u, cfg.workers);
  const std::vector<PermSpec> perms = cfg.closure ? even_permutations(cfg.n) : std::vector<PermSpec>{};

  ScreeningReport rep;
  rep.field = f;
  rep.n = cfg.n;
  rep.degree = cfg.degree;
  rep.mode = "random";
  rep.seed = cfg.seed;
  rep.workers = workers;
  rep.closure = cfg.closure;
  rep.target = cfg.target;
  rep.zero_gamma_identity = cfg.zero_gamma_identity;

  DedupeSink sink;
  const std::uint64_t batch = 64 * workers;
  std::vector<std::optional<FMatrix>> results;
  std::uint64_t next_draw = 0;
  bool done = false;

  while (!done && next_draw < cfg.max_draws) {
    const std::uint64_t count = std::min(batch, cfg.max_draws - next_draw);
    results.assign(count, std::nullopt);
    run_workers(workers, [&](unsigned w) {
      for (std::uint64_t i = w; i < count; i += workers) {
        Prng rng = Prng::stream(cfg.seed, next_draw + i);
        results[i] = screen_one(GeneratorSet::random(f, cfg.n, cfg.degree, rng), cfg.zero_gamma_identity);
      }
    });
    // sequential merge in draw order
    for (std::uint64_t i = 0; i < count; ++i) {
      ++rep.candidates_tried;
      if (!results[i]) {
        ++rep.failures;
      } else {
        const FMatrix& w0 = *results[i];
        if (sink.insert(w0) && cfg.closure) {
          for (const auto& p : perms) {
            sink.insert(permute(w0, p, Side::Left));
            sink.insert(permute(w0, p, Side::Right));
          }
        }
      }
      if (rep.rate_curve.empty() || rep.rate_curve.back().second != sink.size())
        rep.rate_curve.emplace_back(rep.candidates_tried, sink.size());
      if (sink.size() >= cfg.target) {
        done = true;
        break;
      }
    }
    next_draw += count;
  }
  if (rep.rate_curve.empty() || rep.rate_curve.back().first != rep.candidates_tried)
    rep.rate_curve.emplace_back(rep.candidates_tried, sink.size());

  rep.successes = rep.candidates_tried - rep.failures;
  rep.distinct_count = sink.size();
  rep.det_counts = sink.det_counts();
  if (cfg.keep_keys) rep.keys = sink.sorted_keys();
  rep.elapsed_seconds = seconds_since(t0);
  if (!done) return TargetNotReached{std::move(rep)};
  return rep;
}

TrialStats failure_trials(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw Error(Errc::InvalidArgument, "trials must be >= 1");
  const auto t0 = Clock::now();
  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<std::uint64_t> failed(workers, 0);
  run_workers(workers, [&](unsigned w) {
    for (std::uint64_t t = w; t < cfg.trials; t += workers) {
      Prng rng = Prng::stream(cfg.seed, t);
      GeneratorSet g = cfg.zero_generators ? GeneratorSet(cfg.field, cfg.n, cfg.degree)
                                           : GeneratorSet::random(cfg.field, cfg.n, cfg.degree, rng);
      if (!build_delta(g)) ++failed[w];
    }
  });
  TrialStats s;
  s.p = cfg.field.p();
  s.m = cfg.field.m();
  s.n = cfg.n;
  s.degree = cfg.degree;
  s.trials = cfg.trials;
  s.seed = cfg.seed;
  for (auto v : failed) s.failures += v;
  s.seconds = seconds_since(t0);
  return s;
}

std::uint64_t complexity_envelope(std::size_t n, std::size_t degree) {
  const std::uint64_t k = degree + 1;
  // 2 K^3 + 1.1 K^2 n^2, rounded down
  return 2 * k * k * k + (11 * k * k * n * n) / 10;
}

std::vector<BenchRow> bench_multiplications(const Field& f, const std::vector<std::size_t>& n_list,
                                            const std::vector<std::size_t>& degree_list, std::uint64_t seed) {
  std::vector<BenchRow> rows;
  std::uint64_t stream = 0;
  for (std::size_t degree : degree_list)
    for (std::size_t n : n_list) {
      for (;;) {
        Prng rng = Prng::stream(seed, stream++);
        const GeneratorSet g = GeneratorSet::random(f, n, degree, rng);
        const auto t0 = Clock::now();
        auto r = generate(g, {.verify = false, .check_det = false});
        const double secs = seconds_since(t0);
        if (!r) continue;
        BenchRow row;
        row.n = n;
        row.degree = degree;
        row.mult_count = r->mult_count;
        row.seconds = secs;
        row.envelope_applies = n >= 4 * (degree + 1);
        row.envelope_ok = !row.envelope_applies || r->mult_count <= complexity_envelope(n, degree);
        rows.push_back(row);
        break;
      }
    }
  return rows;
}

std::string rate_curve_csv(const ScreeningReport& r) {
  std::ostringstream os;
  os << "draws,distinct\n";
  for (const auto& [d, k] : r.rate_curve) os << d << ',' << k << '\n';
  return os.str();
}

std::string key_dump(const ScreeningReport& r) {
  std::ostringstream os;
  for (const auto& k : r.keys) os << to_hex(k) << '\n';
  return os.str();
}

}  // namespace gfo
