#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>

#include "entropic/distribution.hpp"

namespace entropic {

/// Entropy values in bits (binary logarithm).
using Bits = double;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

inline double bits_to_nats(Bits b) { return b * kLn2; }

/// log2 of a positive arbitrary-precision integer.
double log2_big(const BigInt& v);

/// Shannon entropy. Each atom contributes p * (log2 den(p) - log2 num(p)),
/// evaluated from the exact rational.
Bits entropy(const Dist& d);
/// Entropy of the tuple-valued variable.
Bits entropy(const Joint& j);

/// H{target | given} = sum over values g of the given coordinates of
/// P(g) * H{target | given = g}. Throws IndexOverlap, IndexOutOfRange.
Bits conditional_entropy(const Joint& j, std::span<const std::size_t> target, std::span<const std::size_t> given);
Bits conditional_entropy(const Joint& j, std::initializer_list<std::size_t> target,
                         std::initializer_list<std::size_t> given);

/// H{target | statistic}, summing fibre entropies over the statistic's values.
Bits conditional_entropy_given_statistic(const Joint& j, std::span<const std::size_t> target, const Word& statistic);
Bits conditional_entropy_given_statistic(const Joint& j, std::initializer_list<std::size_t> target,
                                         const Word& statistic);

}  // namespace entropic
