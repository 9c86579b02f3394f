#pragma once

#include <cstdint>

namespace quantreactor {

/// Deterministic 64-bit generator (splitmix64). Small state, identical
/// streams on every platform, and cheap to fork: batch runs derive one
/// independent stream per (seed, trajectory, replicate) triple so results
/// do not depend on execution order.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Stream with a reproducible identity, independent of this one.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    Rng mixer(seed);
    mixer.state_ ^= 0x9e3779b97f4a7c15ULL * (a + 1);
    mixer.next_u64();
    mixer.state_ ^= 0xbf58476d1ce4e5b9ULL * (b + 1);
    mixer.next_u64();
    return mixer;
  }

private:
  std::uint64_t state_;
};

}  // namespace quantreactor
