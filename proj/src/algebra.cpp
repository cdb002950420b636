#include "entropic/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace entropic {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ZeroInMultiplicativeGroup: return "ZeroInMultiplicativeGroup";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::EmptyProduct: return "EmptyProduct";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::NonCanonical: return "NonCanonical";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IndexOverlap: return "IndexOverlap";
    case ErrorCode::RingOpOnGroup: return "RingOpOnGroup";
    case ErrorCode::ZeroProbabilityEvent: return "ZeroProbabilityEvent";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::ConstructionMismatch: return "ConstructionMismatch";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonPrimeQ: return "NonPrimeQ";
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::SupportTooLarge: return "SupportTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Element

std::string Element::to_string() const {
  if (coords.size() == 1) return coords.front().get_str();
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    out += coords[i].get_str();
  }
  return out + ")";
}

bool operator==(const Element& a, const Element& b) {
  if (a.coords.size() != b.coords.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (cmp(a.coords[i], b.coords[i]) != 0) return false;
  }
  return true;
}

bool operator<(const Element& a, const Element& b) {
  const std::size_t n = std::min(a.coords.size(), b.coords.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a.coords[i], b.coords[i]);
    if (c != 0) return c < 0;
  }
  return a.coords.size() < b.coords.size();
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (BigInt d = 3; d * d <= n; d += 2) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
  }
  return true;
}

namespace {

BigInt mod(const BigInt& a, const BigInt& n) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

void require_prime(const BigInt& p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, p.get_str() + " is not prime");
}

void require_arity(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(expected) +
                                              " coordinate(s), got " + std::to_string(got));
  }
}

void canonicalize_into(const GroupSpec& spec, std::span<const BigInt> raw, std::vector<BigInt>& out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Integers:
      out.push_back(raw[0]);
      return;
    case GroupSpec::Kind::IntegersMod:
    case GroupSpec::Kind::FpAdditive:
      out.push_back(mod(raw[0], spec.modulus()));
      return;
    case GroupSpec::Kind::FpMultiplicative: {
      BigInt r = mod(raw[0], spec.modulus());
      if (r == 0) {
        throw Error(ErrorCode::ZeroInMultiplicativeGroup,
                    raw[0].get_str() + " is 0 mod " + spec.modulus().get_str());
      }
      out.push_back(std::move(r));
      return;
    }
    case GroupSpec::Kind::Product: {
      std::size_t offset = 0;
      for (const GroupSpec& f : spec.factors()) {
        canonicalize_into(f, raw.subspan(offset, f.arity()), out);
        offset += f.arity();
      }
      return;
    }
  }
}

bool canonical_at(const GroupSpec& spec, std::span<const BigInt> c) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Integers:
      return true;
    case GroupSpec::Kind::IntegersMod:
    case GroupSpec::Kind::FpAdditive:
      return c[0] >= 0 && c[0] < spec.modulus();
    case GroupSpec::Kind::FpMultiplicative:
      return c[0] >= 1 && c[0] < spec.modulus();
    case GroupSpec::Kind::Product: {
      std::size_t offset = 0;
      for (const GroupSpec& f : spec.factors()) {
        if (!canonical_at(f, c.subspan(offset, f.arity()))) return false;
        offset += f.arity();
      }
      return true;
    }
  }
  return false;
}

void op_into(const GroupSpec& spec, std::span<const BigInt> a, std::span<const BigInt> b,
             std::vector<BigInt>& out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Integers:
      out.push_back(a[0] + b[0]);
      return;
    case GroupSpec::Kind::IntegersMod:
    case GroupSpec::Kind::FpAdditive:
      out.push_back(mod(a[0] + b[0], spec.modulus()));
      return;
    case GroupSpec::Kind::FpMultiplicative:
      out.push_back(mod(a[0] * b[0], spec.modulus()));
      return;
    case GroupSpec::Kind::Product: {
      std::size_t offset = 0;
      for (const GroupSpec& f : spec.factors()) {
        op_into(f, a.subspan(offset, f.arity()), b.subspan(offset, f.arity()), out);
        offset += f.arity();
      }
      return;
    }
  }
}

void inv_into(const GroupSpec& spec, std::span<const BigInt> a, std::vector<BigInt>& out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Integers:
      out.push_back(-a[0]);
      return;
    case GroupSpec::Kind::IntegersMod:
    case GroupSpec::Kind::FpAdditive:
      out.push_back(mod(-a[0], spec.modulus()));
      return;
    case GroupSpec::Kind::FpMultiplicative: {
      BigInt r;
      if (mpz_invert(r.get_mpz_t(), a[0].get_mpz_t(), spec.modulus().get_mpz_t()) == 0) {
        throw Error(ErrorCode::ZeroInMultiplicativeGroup, "element has no inverse");
      }
      out.push_back(std::move(r));
      return;
    }
    case GroupSpec::Kind::Product: {
      std::size_t offset = 0;
      for (const GroupSpec& f : spec.factors()) {
        inv_into(f, a.subspan(offset, f.arity()), out);
        offset += f.arity();
      }
      return;
    }
  }
}

void identity_into(const GroupSpec& spec, std::vector<BigInt>& out) {
  switch (spec.kind()) {
    case GroupSpec::Kind::FpMultiplicative:
      out.emplace_back(1);
      return;
    case GroupSpec::Kind::Product:
      for (const GroupSpec& f : spec.factors()) identity_into(f, out);
      return;
    default:
      out.emplace_back(0);
      return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(Kind kind, BigInt modulus, std::vector<GroupSpec> factors)
    : kind_(kind), modulus_(std::move(modulus)), factors_(std::move(factors)), arity_(1) {
  if (kind_ == Kind::Product) {
    arity_ = 0;
    for (const auto& f : factors_) arity_ += f.arity();
  }
}

GroupSpec GroupSpec::integers() { return GroupSpec(Kind::Integers, 0, {}); }

GroupSpec GroupSpec::integers_mod(const BigInt& n) {
  if (n < 1) throw Error(ErrorCode::InvalidModulus, "modulus must be >= 1, got " + n.get_str());
  return GroupSpec(Kind::IntegersMod, n, {});
}

GroupSpec GroupSpec::fp_additive(const BigInt& p) {
  require_prime(p);
  return GroupSpec(Kind::FpAdditive, p, {});
}

GroupSpec GroupSpec::fp_multiplicative(const BigInt& p) {
  require_prime(p);
  return GroupSpec(Kind::FpMultiplicative, p, {});
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  if (factors.empty()) throw Error(ErrorCode::EmptyProduct, "product needs at least one factor");
  return GroupSpec(Kind::Product, 0, std::move(factors));
}

bool GroupSpec::is_finite() const {
  switch (kind_) {
    case Kind::Integers: return false;
    case Kind::Product:
      return std::all_of(factors_.begin(), factors_.end(), [](const GroupSpec& f) { return f.is_finite(); });
    default: return true;
  }
}

std::string GroupSpec::to_string() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::IntegersMod: return "Z/" + modulus_.get_str();
    case Kind::FpAdditive: return "F_" + modulus_.get_str();
    case Kind::FpMultiplicative: return "F_" + modulus_.get_str() + "^*";
    case Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += " x ";
        out += factors_[i].to_string();
      }
      return "(" + out + ")";
    }
  }
  return "?";
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind_ != b.kind_) return false;
  if (cmp(a.modulus_, b.modulus_) != 0) return false;
  return a.factors_ == b.factors_;
}

// ---------------------------------------------------------------------------
// RingSpec

RingSpec RingSpec::integer_ring() { return RingSpec(Kind::IntegerRing, 0); }

RingSpec RingSpec::fp(const BigInt& p) {
  require_prime(p);
  return RingSpec(Kind::Fp, p);
}

std::string RingSpec::to_string() const {
  return kind_ == Kind::IntegerRing ? "Z (ring)" : "F_" + modulus_.get_str() + " (ring)";
}

bool operator==(const RingSpec& a, const RingSpec& b) {
  return a.kind_ == b.kind_ && cmp(a.modulus_, b.modulus_) == 0;
}

// ---------------------------------------------------------------------------
// Free operations

Element canonicalize(const GroupSpec& spec, std::span<const BigInt> raw) {
  require_arity(spec.arity(), raw.size());
  std::vector<BigInt> out;
  out.reserve(raw.size());
  canonicalize_into(spec, raw, out);
  return Element(std::move(out));
}

Element canonicalize(const RingSpec& ring, std::span<const BigInt> raw) {
  require_arity(1, raw.size());
  if (ring.kind() == RingSpec::Kind::IntegerRing) return Element({raw[0]});
  return Element({mod(raw[0], ring.modulus())});
}

bool is_canonical(const GroupSpec& spec, const Element& e) {
  return e.size() == spec.arity() && canonical_at(spec, e.coords);
}

bool is_canonical(const RingSpec& ring, const Element& e) {
  if (e.size() != 1) return false;
  if (ring.kind() == RingSpec::Kind::IntegerRing) return true;
  return e.coords[0] >= 0 && e.coords[0] < ring.modulus();
}

Element group_op(const GroupSpec& spec, const Element& a, const Element& b) {
  require_arity(spec.arity(), a.size());
  require_arity(spec.arity(), b.size());
  std::vector<BigInt> out;
  out.reserve(a.size());
  op_into(spec, a.coords, b.coords, out);
  return Element(std::move(out));
}

Element group_inv(const GroupSpec& spec, const Element& a) {
  require_arity(spec.arity(), a.size());
  std::vector<BigInt> out;
  out.reserve(a.size());
  inv_into(spec, a.coords, out);
  return Element(std::move(out));
}

Element group_identity(const GroupSpec& spec) {
  std::vector<BigInt> out;
  identity_into(spec, out);
  return Element(std::move(out));
}

Element ring_add(const RingSpec& ring, const Element& a, const Element& b) {
  require_arity(1, a.size());
  require_arity(1, b.size());
  if (ring.kind() == RingSpec::Kind::IntegerRing) return Element({a.coords[0] + b.coords[0]});
  return Element({mod(a.coords[0] + b.coords[0], ring.modulus())});
}

Element ring_neg(const RingSpec& ring, const Element& a) {
  require_arity(1, a.size());
  if (ring.kind() == RingSpec::Kind::IntegerRing) return Element({-a.coords[0]});
  return Element({mod(-a.coords[0], ring.modulus())});
}

Element ring_mul(const RingSpec& ring, const Element& a, const Element& b) {
  require_arity(1, a.size());
  require_arity(1, b.size());
  if (ring.kind() == RingSpec::Kind::IntegerRing) return Element({a.coords[0] * b.coords[0]});
  return Element({mod(a.coords[0] * b.coords[0], ring.modulus())});
}

// ---------------------------------------------------------------------------
// Carrier

std::size_t Carrier::arity() const noexcept {
  if (const auto* g = group()) return g->arity();
  return 1;
}

bool Carrier::has_product() const noexcept {
  if (is_ring()) return true;
  return group()->kind() == GroupSpec::Kind::FpMultiplicative;
}

Element Carrier::canonicalize(std::span<const BigInt> raw) const {
  if (const auto* g = group()) return entropic::canonicalize(*g, raw);
  return entropic::canonicalize(*ring(), raw);
}

bool Carrier::is_canonical(const Element& e) const {
  if (const auto* g = group()) return entropic::is_canonical(*g, e);
  return entropic::is_canonical(*ring(), e);
}

Element Carrier::add(const Element& a, const Element& b) const {
  if (const auto* g = group()) return group_op(*g, a, b);
  return ring_add(*ring(), a, b);
}

Element Carrier::neg(const Element& a) const {
  if (const auto* g = group()) return group_inv(*g, a);
  return ring_neg(*ring(), a);
}

Element Carrier::mul(const Element& a, const Element& b) const {
  if (const auto* r = ring()) return ring_mul(*r, a, b);
  throw Error(ErrorCode::RingOpOnGroup, "product requested on group carrier " + to_string());
}

Element Carrier::zero() const {
  if (const auto* g = group()) return group_identity(*g);
  return Element::scalar(0);
}

std::string Carrier::to_string() const {
  if (const auto* g = group()) return g->to_string();
  return ring()->to_string();
}

}  // namespace entropic
