#pragma once

// Seeded generators for random carriers, sets and exact-rational
// distributions. Everything is a pure function of the Rng state, and the Rng
// itself avoids the standard distributions so streams are identical across
// standard library implementations.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "entropic/distribution.hpp"

namespace entropic::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long between(long lo, long hi);
  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  const T& pick(std::span<const T> xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64-style mixing of a base seed with stream identifiers, so
/// independent trials get independent generators.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct SizeCaps {
  std::size_t max_support = 12;
  long coord_lo = -16;
  long coord_hi = 16;
  std::uint64_t max_den = 64;
};

/// Integers, Z/n (2 <= n <= 12), F_p additive for small p, or a product of two
/// small cyclic groups.
Carrier random_group(Rng& rng);
/// Integer ring or F_p for a small prime p.
Carrier random_ring(Rng& rng);

Element random_element(Rng& rng, const Carrier& carrier, const SizeCaps& caps);

/// n positive rationals summing to one, each with denominator <= max_den.
std::vector<Rational> random_masses(Rng& rng, std::size_t n, std::uint64_t max_den);

/// Up to `size` distinct elements (fewer when the carrier is smaller).
std::vector<Element> random_set(Rng& rng, const Carrier& carrier, std::size_t size, const SizeCaps& caps,
                                bool nonzero = false);
/// A random Sidon set, grown greedily from random candidates.
std::vector<Element> random_sidon_set(Rng& rng, const Carrier& carrier, std::size_t size, const SizeCaps& caps);

Dist random_dist_on(Rng& rng, const Carrier& carrier, std::span<const Element> support, std::uint64_t max_den);
Dist random_dist(Rng& rng, const Carrier& carrier, const SizeCaps& caps, bool nonzero = false);
Joint random_joint(Rng& rng, const Carrier& carrier, std::size_t arity, const SizeCaps& caps);

}  // namespace entropic::gen
