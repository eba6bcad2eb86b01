#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfortho/error.hpp"
#include "gfortho/field.hpp"
#include "gfortho/jl_core.hpp"
#include "gfortho/ortho.hpp"

namespace gfo {

// Set of distinct orthogonal matrices keyed by OrthoKey. A matrix is checked
// with verify_orthogonal the first time it is seen; insert() throws
// std::logic_error for a non-orthogonal matrix.
class DedupeSink {
 public:
  bool insert(const FMatrix& m);
  bool contains(const FMatrix& m) const { return keys_.count(ortho_key(m)) != 0; }
  // Union; associative and order-independent.
  void merge(const DedupeSink& other);

  std::size_t size() const noexcept { return keys_.size(); }
  // Number of distinct matrices per determinant value.
  std::map<Elem, std::uint64_t> det_counts() const;
  std::vector<OrthoKey> sorted_keys() const;

 private:
  std::unordered_map<OrthoKey, Elem> keys_;  // key -> det
};

struct ScreeningReport {
  Field field = Field::make(2);
  std::size_t n = 0, degree = 0;
  std::string mode;  // "exhaustive" | "random"
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool closure = false;
  std::uint64_t target = 0;
  bool zero_gamma_identity = false;

  std::uint64_t candidates_tried = 0;
  std::uint64_t failures = 0;  // singular Delta
  std::uint64_t successes = 0;
  std::uint64_t distinct_count = 0;
  std::map<Elem, std::uint64_t> det_counts;
  double elapsed_seconds = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rate_curve;  // (draws, distinct)
  std::vector<OrthoKey> keys;  // sorted; filled when requested
};

struct ExhaustiveConfig {
  Field field;
  std::size_t n = 2;
  std::size_t degree = 1;
  unsigned workers = 1;
  std::uint64_t budget = 10'000'000;  // max candidates without override
  bool allow_over_budget = false;
  bool keep_keys = false;
  // Record I_n for the all-zero generator set instead of the constructed
  // diag(1, ..., 1, (-1)^N).
  bool zero_gamma_identity = false;
};

// Every generator set in odometer order (last gamma entry fastest), sharded
// into contiguous index ranges. Throws Error(BudgetExceeded) when q^((n-1)N)
// exceeds the budget and no override is given. The report does not depend on
// the worker count.
ScreeningReport screen_exhaustive(const ExhaustiveConfig& cfg);

struct RandomConfig {
  Field field;
  std::size_t n = 2;
  std::size_t degree = 1;
  std::uint64_t target = 1;
  bool closure = false;
  std::uint64_t seed = 0;
  std::uint64_t max_draws = 1'000'000;
  unsigned workers = 1;
  bool keep_keys = false;
  bool zero_gamma_identity = false;  // as in ExhaustiveConfig
};

struct TargetNotReached {
  ScreeningReport partial;
};

// Draw d uses Prng::stream(seed, d), so the outcome depends only on the
// seed, never on the worker count. With closure, every new W0 is expanded by
// all left and all right even row/column permutations.
Expected<ScreeningReport, TargetNotReached> screen_random(const RandomConfig& cfg);

struct TrialConfig {
  Field field;
  std::size_t n = 2;
  std::size_t degree = 1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool zero_generators = false;  // every trial uses gamma = 0
};

struct TrialStats {
  std::uint32_t p = 0;
  unsigned m = 1;
  std::size_t n = 0, degree = 0;
  std::uint64_t trials = 0, seed = 0;
  std::uint64_t failures = 0;
  double seconds = 0;
};

// Counts singular Delta among `trials` seeded draws. Only Delta is built and
// factored; no generation happens.
TrialStats failure_trials(const TrialConfig& cfg);

struct BenchRow {
  std::size_t n = 0, degree = 0;
  std::uint64_t mult_count = 0;
  double seconds = 0;
  bool envelope_applies = false;  // n >= 4(N+1)
  bool envelope_ok = true;        // mult_count <= 2(N+1)^3 + 1.1 (N+1)^2 n^2
};

std::uint64_t complexity_envelope(std::size_t n, std::size_t degree);

// One successful generation per (n, N) cell, resampling on singular Delta.
std::vector<BenchRow> bench_multiplications(const Field& f, const std::vector<std::size_t>& n_list,
                                            const std::vector<std::size_t>& degree_list, std::uint64_t seed);

// Output helpers.
std::string rate_curve_csv(const ScreeningReport& r);
std::string key_dump(const ScreeningReport& r);  // sorted hex keys, one per line

}  // namespace gfo
