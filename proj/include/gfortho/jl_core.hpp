#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gfortho/error.hpp"
#include "gfortho/field.hpp"
#include "gfortho/linalg.hpp"
#include "gfortho/polymat.hpp"

namespace gfo {

class Prng;

// Coefficients gamma_{i,k} (1 <= i < n, 1 <= k <= N) of the negative-power
// polynomials zeta_i(t) = sum_k gamma_{i,k} t^-k that fill the last row of
// the n x n generator matrix G(t). Stored row-major, 0-based.
class GeneratorSet {
 public:
  GeneratorSet(Field field, std::size_t n, std::size_t degree);
  GeneratorSet(Field field, std::size_t n, std::size_t degree, std::vector<Elem> gamma);

  static GeneratorSet random(const Field& field, std::size_t n, std::size_t degree, Prng& rng);

  const Field& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return degree_; }
  // gamma(i, k) is gamma_{i+1, k+1}.
  Elem gamma(std::size_t i, std::size_t k) const noexcept { return gamma_[i * degree_ + k]; }
  Elem& gamma(std::size_t i, std::size_t k) noexcept { return gamma_[i * degree_ + k]; }
  const std::vector<Elem>& values() const noexcept { return gamma_; }

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) noexcept {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.gamma_ == b.gamma_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  std::size_t n_;
  std::size_t degree_;
  std::vector<Elem> gamma_;
};

struct SingularDelta {
  std::size_t column;        // elimination column without a pivot
  std::size_t rank_deficit;
};

// Delta = sum_i (D^-1 Gamma_i)^2 + I_{N+1}, where Gamma_i is zero in its first
// row and holds gamma_{i, r+c} at (r, c) below it (0-based, zero past N).
struct SystemWorkspace {
  GeneratorSet generators;
  FMatrix delta;
  std::optional<LuFactorization> lu;  // empty for n = 1 (Delta = I)
};

Expected<SystemWorkspace, SingularDelta> build_delta(const GeneratorSet& g);

// sum_i Gamma_i^2 + I_{N+1} with the symmetric Hankel Gamma_i whose first row
// is (0, gamma_{i,1}, ..., gamma_{i,N}). Diagnostic only: generation uses
// build_delta.
FMatrix hankel_form_delta(const GeneratorSet& g);

struct Diagnostics {
  bool polynomial_degree_ok = false;  // U has exponents in [0, N] only
  bool u1_identity = false;
  bool paraunitary = false;
  bool w0_orthogonal = false;
  bool last_row_nonzero = false;
  DetStatus det = DetStatus::Skipped;
};

struct GenerationResult {
  GeneratorSet generators;
  MatPoly u;       // U_0 .. U_N
  FMatrix w0;      // U(-1)
  FMatrix w1;      // (U_0 U_1 ... U_N), n x n(N+1)
  std::uint64_t mult_count = 0;
  Diagnostics diagnostics;
};

struct GenerateOptions {
  bool verify = true;     // postconditions; a violation throws std::logic_error
  bool check_det = true;  // det U(t) = t^N diagnostic (only when verify)
};

// Builds the paraunitary U(t) with U(1) = I_n. mult_count covers the
// construction only, not the verification.
Expected<GenerationResult, SingularDelta> generate(const GeneratorSet& g, const GenerateOptions& opts = {});

// Inverse map: reads the generators back from a paraunitary U of degree <= N.
// Throws Error(NotParaunitary), Error(NoAnchorColumn) or Error(InvalidArgument).
GeneratorSet recover(const MatPoly& u, std::size_t degree);

// Block-circulant n(N+1) x n(N+1) matrix whose block row b is W1 shifted
// right by b blocks. Throws std::logic_error if W W^T != I.
FMatrix build_circulant(const GenerationResult& r);

}  // namespace gfo
