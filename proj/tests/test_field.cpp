#include <gtest/gtest.h>

#include <vector>

#include "gfortho/field.hpp"
#include "gfortho/prng.hpp"
#include "oracles.hpp"

using gfo::Elem;
using gfo::Errc;
using gfo::Field;

namespace {

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const gfo::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no gfo::Error thrown";
  return Errc::InvalidArgument;
}

// Reference product in GF(p^m): schoolbook over digit vectors, then long
// division by the monic modulus.
std::vector<oracle::i64> ext_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                 const std::vector<std::uint32_t>& modulus, oracle::i64 p) {
  const std::size_t m = modulus.size() - 1;
  std::vector<oracle::i64> prod(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) prod[i + j] = oracle::mod(prod[i + j] + oracle::i64(a[i]) * b[j], p);
  for (std::size_t k = prod.size(); k-- > m;) {
    const oracle::i64 c = prod[k];
    for (std::size_t i = 0; i <= m; ++i) prod[k - m + i] = oracle::mod(prod[k - m + i] - c * modulus[i], p);
  }
  prod.resize(m);
  return prod;
}

std::vector<Field> small_fields() {
  return {Field::make(2),    Field::make(3),    Field::make(5),    Field::make(7),
          Field::make(97),   Field::make(2, 2), Field::make(2, 3), Field::make(3, 2),
          Field::make(5, 2), Field::make(2, 4)};
}

}  // namespace

TEST(Field, ConstructionExamples) {
  const Field z7 = Field::make(7);
  EXPECT_EQ(z7.p(), 7u);
  EXPECT_EQ(z7.m(), 1u);
  EXPECT_EQ(z7.q(), 7u);

  const Field gf4 = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  EXPECT_EQ(gf4.q(), 4u);
  EXPECT_EQ(gf4.modulus(), (std::vector<std::uint32_t>{1, 1, 1}));

  EXPECT_EQ(error_code([] { Field::make(4); }), Errc::NotPrime);
  EXPECT_EQ(error_code([] { Field::make(1); }), Errc::NotPrime);
  // x^2 + 1 = (x + 1)^2 over GF(2)
  EXPECT_EQ(error_code([] { Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }), Errc::NotIrreducible);
  EXPECT_EQ(error_code([] { Field::make(2, 3, std::vector<std::uint32_t>{1, 1, 1}); }), Errc::DegreeMismatch);
}

TEST(Field, DefaultModulusIsFirstIrreducible) {
  EXPECT_EQ(Field::make(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(Field::make(2, 3).modulus(), (std::vector<std::uint32_t>{1, 0, 1, 1}));
  EXPECT_EQ(Field::make(3, 2).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Field, ArithmeticExamples) {
  const Field z7 = Field::make(7), z5 = Field::make(5);
  EXPECT_EQ(z7.mul(3, 5), 1u);
  EXPECT_EQ(z5.neg(1), 4u);
  EXPECT_EQ(z5.minus_one(), 4u);
  EXPECT_EQ(z7.inv(3), 5u);
  EXPECT_EQ(z5.inv(2), 3u);
  EXPECT_EQ(error_code([&] { z5.inv(0); }), Errc::DivisionByZero);

  const Field gf4 = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  const Elem x = gf4.from_digits(std::vector<std::uint32_t>{0, 1});
  const Elem x1 = gf4.from_digits(std::vector<std::uint32_t>{1, 1});
  EXPECT_EQ(gf4.mul(x, x1), gf4.one());
  EXPECT_EQ(error_code([&] { gf4.inv(0); }), Errc::DivisionByZero);
}

TEST(Field, PrimalityMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(gfo::is_prime(n), oracle::trial_division_prime(n)) << n;
  EXPECT_TRUE(gfo::is_prime(2147483647ULL));
  EXPECT_FALSE(gfo::is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Field, IrreducibilityMatchesRootSearchForCubics) {
  // A cubic is irreducible iff it has no root.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t c0 = 0; c0 < p; ++c0)
      for (std::uint32_t c1 = 0; c1 < p; ++c1)
        for (std::uint32_t c2 = 0; c2 < p; ++c2) {
          const std::vector<std::uint32_t> f{c0, c1, c2, 1};
          bool root = false;
          for (oracle::i64 x = 0; x < p; ++x)
            if (oracle::mod(c0 + c1 * x + c2 * x * x + x * x * x, p) == 0) root = true;
          EXPECT_EQ(gfo::gfp::is_irreducible(f, p), !root);
        }
  }
}

TEST(Field, ExtensionProductMatchesSchoolbook) {
  for (const Field& f : small_fields()) {
    if (f.is_prime_field()) continue;
    for (Elem a = 0; a < f.q(); ++a)
      for (Elem b = 0; b < f.q(); ++b) {
        const auto want = ext_mul(f.digits(a), f.digits(b), f.modulus(), f.p());
        const auto got = f.digits(f.mul(a, b));
        ASSERT_EQ(std::vector<oracle::i64>(got.begin(), got.end()), want);
      }
  }
}

TEST(Field, AxiomsHoldExhaustivelyOnSmallFields) {
  for (const Field& f : small_fields()) {
    const Elem q = static_cast<Elem>(f.q());
    if (q > 27) continue;
    for (Elem a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, 0), a);
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      EXPECT_EQ(f.pow(a, f.q()), a);  // Frobenius fixes every element
      for (Elem b = 0; b < q; ++b) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        EXPECT_EQ(f.sub(f.add(a, b), b), a);
        for (Elem c = 0; c < q; ++c) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
          EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        }
      }
    }
  }
}

TEST(Field, AxiomsHoldOnRandomTriplesInLargeFields) {
  gfo::Prng rng(2024);
  for (const Field& f : {Field::make(997), Field::make(2147483647), Field::make(97, 3), Field::make(65521, 2)}) {
    for (int t = 0; t < 2000; ++t) {
      const Elem a = gfo::sample_uniform(f, rng), b = gfo::sample_uniform(f, rng), c = gfo::sample_uniform(f, rng);
      ASSERT_TRUE(f.contains(a));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      if (f.is_prime_field()) EXPECT_EQ(f.mul(a, b), static_cast<Elem>(std::uint64_t{a} * b % f.p()));
    }
  }
}

TEST(Field, MultiplicativeGroupIsCyclicOfOrderQMinusOne) {
  for (const Field& f : small_fields()) {
    bool found_generator = false;
    for (Elem g = 1; g < f.q() && !found_generator; ++g) {
      Elem x = g;
      std::uint64_t order = 1;
      while (x != 1) {
        x = f.mul(x, g);
        ++order;
      }
      found_generator = order == f.q() - 1;
    }
    EXPECT_TRUE(found_generator) << "p=" << f.p() << " m=" << f.m();
  }
}

TEST(Field, DigitsRoundTrip) {
  const Field f = Field::make(3, 3);
  for (Elem a = 0; a < f.q(); ++a) EXPECT_EQ(f.from_digits(f.digits(a)), a);
  EXPECT_THROW(f.from_digits(std::vector<std::uint32_t>{3, 0, 0}), gfo::Error);
}
