#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "gfortho/field.hpp"
#include "gfortho/prng.hpp"

TEST(Prng, MatchesReferenceSplitMix64) {
  // published outputs of the reference SplitMix64 for seed 0
  gfo::Prng r(0);
  EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(r.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(r.next(), 0x06c45d188009454fULL);
}

TEST(Prng, FrozenZ5Sequence) {
  const gfo::Field f = gfo::Field::make(5);
  gfo::Prng r(42);
  const std::vector<gfo::Elem> want{3, 1, 3, 4, 0, 2, 0, 3, 0, 4, 2, 1, 3, 0, 1, 0, 4, 1, 2, 3};
  std::vector<gfo::Elem> got;
  for (std::size_t i = 0; i < want.size(); ++i) got.push_back(gfo::sample_uniform(f, r));
  EXPECT_EQ(got, want);
}

TEST(Prng, FrozenStream) {
  gfo::Prng r = gfo::Prng::stream(42, 3);
  EXPECT_EQ(r.next(), 11817444426246999625ULL);
  EXPECT_EQ(r.next(), 10433291849589616616ULL);
  EXPECT_EQ(r.next(), 715827170892696203ULL);
}

TEST(Prng, SameSeedSameSequence) {
  gfo::Prng a(123), b(123), c(124);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Prng, StreamsAreDistinct) {
  std::vector<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) firsts.push_back(gfo::Prng::stream(7, i).next());
  std::sort(firsts.begin(), firsts.end());
  EXPECT_EQ(std::adjacent_find(firsts.begin(), firsts.end()), firsts.end());
}

TEST(Prng, Z7FrequenciesWithinFiveSigma) {
  const gfo::Field f = gfo::Field::make(7);
  gfo::Prng r(99);
  constexpr int draws = 1'000'000;
  std::array<int, 7> count{};
  for (int i = 0; i < draws; ++i) ++count[gfo::sample_uniform(f, r)];
  const double mean = draws / 7.0, sigma = std::sqrt(draws * (1.0 / 7) * (6.0 / 7));
  for (int c : count) EXPECT_LT(std::abs(c - mean), 5 * sigma);
}

TEST(Prng, BelowStaysInRange) {
  gfo::Prng r(5);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 97ULL, (1ULL << 63) + 1}) {
    for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(bound), bound);
  }
}
