#pragma once

// Ambient algebraic structures: finitely generated abelian groups and the two
// commutative rings we need, plus canonical element encodings.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "entropic/error.hpp"

namespace entropic {

using BigInt = mpz_class;
using Rational = mpq_class;

/// A group or ring element. Product groups flatten their factors into one
/// coordinate vector, every other carrier uses exactly one coordinate.
struct Element {
  std::vector<BigInt> coords;

  Element() = default;
  explicit Element(std::vector<BigInt> c) : coords(std::move(c)) {}

  static Element scalar(long value) { return Element({BigInt(value)}); }
  static Element scalar(const BigInt& value) { return Element({value}); }

  std::size_t size() const noexcept { return coords.size(); }

  /// "5" for scalars, "(1,2)" for product elements.
  std::string to_string() const;

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator<(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
};

using Tuple = std::vector<Element>;

bool is_prime(const BigInt& n);

class GroupSpec {
 public:
  enum class Kind { Integers, IntegersMod, FpAdditive, FpMultiplicative, Product };

  static GroupSpec integers();
  static GroupSpec integers_mod(const BigInt& n);
  static GroupSpec fp_additive(const BigInt& p);
  static GroupSpec fp_multiplicative(const BigInt& p);
  static GroupSpec product(std::vector<GroupSpec> factors);

  Kind kind() const noexcept { return kind_; }
  /// n for IntegersMod, p for the two prime-field groups, 0 otherwise.
  const BigInt& modulus() const noexcept { return modulus_; }
  const std::vector<GroupSpec>& factors() const noexcept { return factors_; }
  /// Number of flattened coordinates in an element.
  std::size_t arity() const noexcept { return arity_; }
  /// Whether the group has finitely many elements.
  bool is_finite() const;

  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

 private:
  GroupSpec(Kind kind, BigInt modulus, std::vector<GroupSpec> factors);

  Kind kind_;
  BigInt modulus_;
  std::vector<GroupSpec> factors_;
  std::size_t arity_;
};

class RingSpec {
 public:
  enum class Kind { IntegerRing, Fp };

  static RingSpec integer_ring();
  static RingSpec fp(const BigInt& p);

  Kind kind() const noexcept { return kind_; }
  const BigInt& modulus() const noexcept { return modulus_; }

  std::string to_string() const;

  friend bool operator==(const RingSpec& a, const RingSpec& b);
  friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }

 private:
  RingSpec(Kind kind, BigInt modulus) : kind_(kind), modulus_(std::move(modulus)) {}

  Kind kind_;
  BigInt modulus_;
};

Element canonicalize(const GroupSpec& spec, std::span<const BigInt> raw);
Element canonicalize(const RingSpec& ring, std::span<const BigInt> raw);
bool is_canonical(const GroupSpec& spec, const Element& e);
bool is_canonical(const RingSpec& ring, const Element& e);

/// The group law. Under FpMultiplicative this is multiplication mod p.
Element group_op(const GroupSpec& spec, const Element& a, const Element& b);
Element group_inv(const GroupSpec& spec, const Element& a);
Element group_identity(const GroupSpec& spec);

Element ring_add(const RingSpec& ring, const Element& a, const Element& b);
Element ring_neg(const RingSpec& ring, const Element& a);
Element ring_mul(const RingSpec& ring, const Element& a, const Element& b);

/// The structure a distribution lives on: either an abelian group or a ring.
/// Ring carriers use their additive group for +/- and expose a product.
class Carrier {
 public:
  Carrier(GroupSpec group) : spec_(std::move(group)) {}  // NOLINT(google-explicit-constructor)
  Carrier(RingSpec ring) : spec_(std::move(ring)) {}     // NOLINT(google-explicit-constructor)

  bool is_ring() const noexcept { return std::holds_alternative<RingSpec>(spec_); }
  const GroupSpec* group() const noexcept { return std::get_if<GroupSpec>(&spec_); }
  const RingSpec* ring() const noexcept { return std::get_if<RingSpec>(&spec_); }

  std::size_t arity() const noexcept;
  /// True for rings and for FpMultiplicative, whose group law is a product.
  bool has_product() const noexcept;

  Element canonicalize(std::span<const BigInt> raw) const;
  Element canonicalize(const Element& raw) const { return canonicalize(raw.coords); }
  bool is_canonical(const Element& e) const;

  Element add(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  /// Ring product. Throws RingOpOnGroup on group carriers.
  Element mul(const Element& a, const Element& b) const;
  Element zero() const;

  std::string to_string() const;

  friend bool operator==(const Carrier& a, const Carrier& b) { return a.spec_ == b.spec_; }
  friend bool operator!=(const Carrier& a, const Carrier& b) { return !(a == b); }

 private:
  std::variant<GroupSpec, RingSpec> spec_;
};

}  // namespace entropic
