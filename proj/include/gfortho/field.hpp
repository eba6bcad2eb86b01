#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gfortho/error.hpp"

namespace gfo {

// A field element in canonical packed form: for GF(p) the residue in [0, p);
// for GF(p^m) the base-p number sum c_i p^i built from the power-basis
// coefficients c_0..c_{m-1}. Equality of Elem values is field equality.
using Elem = std::uint32_t;

class Prng;

bool is_prime(std::uint64_t n);

// GF(q), q = p^m. Cheap to copy; the modulus is shared.
class Field {
 public:
  // Builds GF(p^m). For m > 1 and no modulus, the first monic irreducible
  // polynomial in lexicographic order of its little-endian coefficient list
  // (c_0 compared first) is used.
  static Field make(std::uint64_t p, unsigned m = 1,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint32_t p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  std::uint64_t q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return m_ == 1; }
  // Little-endian, monic, length m + 1. Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return *modulus_; }

  bool contains(Elem a) const noexcept { return a < q_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem minus_one() const noexcept { return p_ - 1; }
  // Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (m_ == 1) {
      std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    return add_ext(a, b, false);
  }
  Elem sub(Elem a, Elem b) const noexcept {
    if (m_ == 1) return a >= b ? a - b : static_cast<Elem>(std::uint64_t{a} + p_ - b);
    return add_ext(a, b, true);
  }
  Elem neg(Elem a) const noexcept { return sub(0, a); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (m_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
    return mul_ext(a, b);
  }
  // Throws Error(DivisionByZero) for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.m_ == b.m_ && *a.modulus_ == *b.modulus_;
  }

 private:
  Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus);

  Elem add_ext(Elem a, Elem b, bool subtract) const noexcept;
  Elem mul_ext(Elem a, Elem b) const noexcept;

  std::uint32_t p_ = 2;
  unsigned m_ = 1;
  std::uint64_t q_ = 2;
  std::shared_ptr<const std::vector<std::uint32_t>> modulus_;
};

// Uniform draw from the field (rejection sampling on Prng output).
Elem sample_uniform(const Field& f, Prng& rng);

// Polynomial helpers over GF(p), little-endian coefficient vectors.
namespace gfp {
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);
}  // namespace gfp

}  // namespace gfo
