#pragma once

#include <cstdint>

namespace spinlab {

// Deterministic stream generator (splitmix64). We avoid <random> engines so
// that seeded runs produce identical bytes on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Signed integer in [-bound, bound].
  long long signed_below(long long bound) {
    return static_cast<long long>(below(2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
  }

  // Derives an independent stream for a named purpose.
  Rng fork(std::uint64_t tag) {
    std::uint64_t s = next();
    return Rng(s ^ (tag * 0xd1342543de82ef95ULL));
  }

 private:
  std::uint64_t state_;
};

}  // namespace spinlab
