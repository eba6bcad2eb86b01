#pragma once

#include <cstdint>

namespace gfo {

// SplitMix64 (Steele, Lea, Flood). next() adds the golden-gamma increment
// 0x9e3779b97f4a7c15 to the state and returns the mixed state. Output is
// identical on every platform for a given seed.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0, bound) by rejection: draws above the largest multiple of
  // bound that fits in 2^64 are discarded. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t x = next();
      if (x >= limit) return x % bound;
    }
  }

  std::uint64_t state() const noexcept { return state_; }

  // Independent stream number `index` of a master seed. Used to give every
  // trial or draw its own generator so results do not depend on how work is
  // split between threads.
  static Prng stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return Prng(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace gfo
