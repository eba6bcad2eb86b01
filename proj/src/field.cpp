#include "gfortho/field.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "gfortho/prng.hpp"

namespace gfo {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::Unsupported: return "Unsupported";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroAtNegativePower: return "ZeroAtNegativePower";
    case Errc::ZeroFreeTerm: return "ZeroFreeTerm";
    case Errc::NoAnchorColumn: return "NoAnchorColumn";
    case Errc::NotParaunitary: return "NotParaunitary";
    case Errc::OddPermutation: return "OddPermutation";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod64(u64 a, u64 b, u64 n) { return static_cast<u64>(u128{a} * b % n); }

u64 powmod64(u64 a, u64 e, u64 n) {
  u64 r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod64(r, a, n);
    a = mulmod64(a, a, n);
    e >>= 1;
  }
  return r;
}

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod(u64 a, u64 p) {
  // extended Euclid on integers
  std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a % p);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t qt = r0 / r1;
    std::int64_t t = r0 - qt * r1;
    r0 = r1;
    r1 = t;
    t = s0 - qt * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error(Errc::DivisionByZero, "element is not invertible");
  return static_cast<u64>(s0 < 0 ? s0 + static_cast<std::int64_t>(p) : s0);
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + u64{a[i]} * b[j]) % p);
  }
  trim(r);
  return r;
}

// Returns (quotient, remainder); b must be nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, u64 p) {
  trim(a);
  const u64 lead_inv = inv_mod(b.back(), p);
  if (a.size() < b.size()) return {{}, a};
  Poly quot(a.size() - b.size() + 1, 0);
  const size_t db = b.size() - 1;
  for (size_t i = a.size() - 1; i + 1 > db; --i) {
    u64 c = mulmod64(a[i], lead_inv, p);
    quot[i - db] = static_cast<std::uint32_t>(c);
    if (c == 0) continue;
    for (size_t j = 0; j <= db; ++j) {
      size_t k = i - db + j;
      a[k] = static_cast<std::uint32_t>((a[k] + p - mulmod64(c, b[j], p)) % p);
    }
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

Poly poly_mod(const Poly& a, const Poly& m, u64 p) { return poly_divmod(a, m, p).second; }

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly r{1};
  base = poly_mod(base, m, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all n < 2^64.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace gfp {

// f of degree m is irreducible iff gcd(f, x^(p^d) - x) = 1 for d = 1..m/2.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const size_t m = f.size() - 1;
  if (m == 1) return true;
  Poly x{0, 1};
  Poly xp = x;  // x^(p^d) mod f
  for (size_t d = 1; d <= m / 2; ++d) {
    xp = poly_powmod(xp, p, f, p);
    Poly g = poly_gcd(f, poly_sub(xp, x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace gfp

Field::Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(1), modulus_(std::make_shared<const std::vector<std::uint32_t>>(std::move(modulus))) {
  for (unsigned i = 0; i < m; ++i) q_ *= p;
}

Field Field::make(std::uint64_t p, unsigned m, std::optional<std::vector<std::uint32_t>> modulus) {
  if (p >= (u64{1} << 31) || !is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not a prime below 2^31");
  if (m < 1) throw Error(Errc::DegreeMismatch, "extension degree must be >= 1");
  const auto p32 = static_cast<std::uint32_t>(p);

  if (m == 1) {
    if (modulus && !modulus->empty()) {
      // A monic linear modulus is harmless; anything else is a mismatch.
      if (modulus->size() != 2 || (*modulus)[1] != 1 || (*modulus)[0] >= p)
        throw Error(Errc::DegreeMismatch, "prime field takes no modulus");
    }
    return Field(p32, 1, {});
  }

  long double q = 1;
  for (unsigned i = 0; i < m; ++i) q *= static_cast<long double>(p);
  if (q > static_cast<long double>(std::numeric_limits<Elem>::max()))
    throw Error(Errc::Unsupported, "q = p^m must fit in 32 bits");

  if (modulus) {
    const auto& mod = *modulus;
    if (mod.size() != m + 1) throw Error(Errc::DegreeMismatch, "modulus must have m + 1 coefficients");
    for (auto c : mod)
      if (c >= p) throw Error(Errc::DegreeMismatch, "modulus coefficient out of range");
    if (mod.back() != 1) throw Error(Errc::DegreeMismatch, "modulus must be monic");
    if (!gfp::is_irreducible(mod, p32)) throw Error(Errc::NotIrreducible, "modulus is reducible over GF(p)");
    return Field(p32, m, mod);
  }

  // Lexicographic search over (c_0, c_1, ..., c_{m-1}) with c_0 most significant.
  Poly cand(m + 1, 0);
  cand[m] = 1;
  for (;;) {
    if (gfp::is_irreducible(cand, p32)) return Field(p32, m, cand);
    size_t i = m;
    while (i-- > 0) {
      if (++cand[i] < p32) break;
      cand[i] = 0;
    }
    if (i == static_cast<size_t>(-1)) break;
  }
  throw Error(Errc::NotIrreducible, "no irreducible polynomial found");  // unreachable
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(m_, 0);
  for (unsigned i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() != m_) throw Error(Errc::DegreeMismatch, "element needs exactly m coefficients");
  u64 v = 0;
  for (size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw Error(Errc::InvalidArgument, "element coefficient out of range");
    v = v * p_ + digits[i];
  }
  return static_cast<Elem>(v);
}

Elem Field::add_ext(Elem a, Elem b, bool subtract) const noexcept {
  u64 r = 0, scale = 1;
  for (unsigned i = 0; i < m_; ++i) {
    u64 x = a % p_, y = b % p_;
    a /= p_;
    b /= p_;
    u64 s = subtract ? (x + p_ - y) % p_ : (x + y) % p_;
    r += s * scale;
    scale *= p_;
  }
  return static_cast<Elem>(r);
}

Elem Field::mul_ext(Elem a, Elem b) const noexcept {
  if (a == 0 || b == 0) return 0;
  const auto da = digits(a), db = digits(b);
  std::vector<u64> prod(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + u64{da[i]} * db[j]) % p_;
  }
  const auto& mod = *modulus_;
  // modulus is monic: x^m = -(c_0 + ... + c_{m-1} x^{m-1})
  for (size_t k = prod.size(); k-- > m_;) {
    u64 c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (unsigned j = 0; j < m_; ++j) {
      size_t t = k - m_ + j;
      prod[t] = (prod[t] + (p_ - c) * mod[j]) % p_;
    }
  }
  u64 r = 0;
  for (unsigned i = m_; i-- > 0;) r = r * p_ + prod[i];
  return static_cast<Elem>(r);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (m_ == 1) return static_cast<Elem>(inv_mod(a, p_));
  // extended Euclid on polynomials: s*a + t*f = g, g a nonzero constant
  Poly r0 = *modulus_, r1 = digits(a);
  trim(r1);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    auto [qt, rem] = poly_divmod(r0, r1, p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly t = poly_sub(s0, poly_mul(qt, s1, p_), p_);
    s0 = std::move(s1);
    s1 = std::move(t);
  }
  const u64 c = inv_mod(r0.at(0), p_);
  Poly out(m_, 0);
  for (size_t i = 0; i < s0.size() && i < m_; ++i) out[i] = static_cast<std::uint32_t>(mulmod64(s0[i], c, p_));
  return from_digits(out);
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem sample_uniform(const Field& f, Prng& rng) { return static_cast<Elem>(rng.below(f.q())); }

}  // namespace gfo
