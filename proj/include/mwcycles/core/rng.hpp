#pragma once

#include <cstdint>
#include <vector>

namespace mw {

/// Deterministic splitmix64 stream. Standard-library distributions are
/// implementation-defined, so every randomized routine in the library draws
/// from this generator to make seeded runs byte-for-byte reproducible.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Value in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
};

}  // namespace mw
