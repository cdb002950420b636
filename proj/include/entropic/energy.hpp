#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entropic/entropy.hpp"

namespace entropic {

/// An energy computed both ways: from the closed formula 2H{X,Y} - H{Z} and
/// as the entropy of two conditionally independent trials of (X, Y) relative
/// to Z. The two agree for every input; a disagreement beyond tolerance is
/// reported as ConstructionMismatch.
struct EnergyReport {
  Bits value = 0;
  Bits via_formula = 0;
  Bits via_construction = 0;
  std::string inputs_digest;
};

/// The product statistic of a carrier: x0*x1 on rings, the group law on
/// FpMultiplicative. Throws RingOpOnGroup otherwise.
Word product_word(const Carrier& carrier);

/// A{X,Y} for a joint of arity 2.
EnergyReport additive_energy(const Joint& j, double tol = kDefaultTolerance);
/// A{X} = A{X,X'} with X' an independent copy.
EnergyReport self_energy(const Dist& d, double tol = kDefaultTolerance);
/// M{X,Y} = 2H{X,Y} - H{XY}.
EnergyReport mult_energy(const Joint& j, double tol = kDefaultTolerance);
/// M{X} = M{X,X'}.
EnergyReport mult_self_energy(const Dist& d, double tol = kDefaultTolerance);

/// s{X} = H{X+X'} - H{X}.
Bits doubling(const Dist& d);

/// Sumset {a + b}, sorted and duplicate-free.
std::vector<Element> sumset(const Carrier& carrier, std::span<const Element> a, std::span<const Element> b);

/// Number of ordered quadruples (a, a', b, b') with a + b = a' + b', by
/// enumerating A x A x B x B. Throws DuplicateElement on repeated entries.
std::uint64_t set_energy(const Carrier& carrier, std::span<const Element> a, std::span<const Element> b);
/// The same count as the sum of squared representation numbers r(s)^2.
std::uint64_t set_energy_by_representation(const Carrier& carrier, std::span<const Element> a,
                                           std::span<const Element> b);

/// a + b = a' + b' only when {a, b} = {a', b'}.
bool is_sidon_set(const Carrier& carrier, std::span<const Element> a);

struct SidonVerdict {
  bool sidon = false;
  /// s{X} - H{X} + 1
  Bits slack = 0;
};

SidonVerdict is_sidon_rv(const Dist& d, double tol = kDefaultTolerance);

}  // namespace entropic
