#include "entropic/random.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "entropic/energy.hpp"

namespace entropic::gen {

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return v % n;
  }
}

long Rng::between(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

namespace {

constexpr std::array<long, 6> kSmallPrimes = {2, 3, 5, 7, 11, 13};

// Number of elements of a finite carrier, or 0 when infinite.
std::uint64_t carrier_size(const Carrier& c) {
  if (const auto* r = c.ring()) {
    return r->kind() == RingSpec::Kind::Fp ? r->modulus().get_ui() : 0;
  }
  const GroupSpec& g = *c.group();
  switch (g.kind()) {
    case GroupSpec::Kind::Integers: return 0;
    case GroupSpec::Kind::IntegersMod:
    case GroupSpec::Kind::FpAdditive: return g.modulus().get_ui();
    case GroupSpec::Kind::FpMultiplicative: return g.modulus().get_ui() - 1;
    case GroupSpec::Kind::Product: {
      std::uint64_t n = 1;
      for (const auto& f : g.factors()) {
        const std::uint64_t k = carrier_size(f);
        if (k == 0) return 0;
        n *= k;
      }
      return n;
    }
  }
  return 0;
}

void random_coords(Rng& rng, const GroupSpec& g, const SizeCaps& caps, long lo, long hi, std::vector<BigInt>& out) {
  switch (g.kind()) {
    case GroupSpec::Kind::Integers: out.emplace_back(rng.between(lo, hi)); return;
    case GroupSpec::Kind::IntegersMod:
    case GroupSpec::Kind::FpAdditive:
      out.emplace_back(static_cast<unsigned long>(rng.below(g.modulus().get_ui())));
      return;
    case GroupSpec::Kind::FpMultiplicative:
      out.emplace_back(static_cast<unsigned long>(1 + rng.below(g.modulus().get_ui() - 1)));
      return;
    case GroupSpec::Kind::Product:
      for (const auto& f : g.factors()) random_coords(rng, f, caps, lo, hi, out);
      return;
  }
}

Element random_element_in(Rng& rng, const Carrier& carrier, const SizeCaps& caps, long lo, long hi) {
  if (const auto* r = carrier.ring()) {
    if (r->kind() == RingSpec::Kind::IntegerRing) return Element::scalar(rng.between(lo, hi));
    return Element::scalar(static_cast<long>(rng.below(r->modulus().get_ui())));
  }
  std::vector<BigInt> coords;
  random_coords(rng, *carrier.group(), caps, lo, hi, coords);
  return Element(std::move(coords));
}

bool is_zero(const Carrier& c, const Element& e) { return e == c.zero(); }

}  // namespace

Carrier random_group(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return GroupSpec::integers();
    case 1: return GroupSpec::integers_mod(rng.between(2, 12));
    case 2: return GroupSpec::fp_additive(rng.pick<long>(kSmallPrimes));
    default:
      return GroupSpec::product({GroupSpec::integers_mod(rng.between(2, 4)), GroupSpec::integers_mod(rng.between(2, 4))});
  }
}

Carrier random_ring(Rng& rng) {
  if (rng.coin()) return RingSpec::integer_ring();
  return RingSpec::fp(rng.pick<long>(std::span<const long>(kSmallPrimes).subspan(1)));
}

Element random_element(Rng& rng, const Carrier& carrier, const SizeCaps& caps) {
  return random_element_in(rng, carrier, caps, caps.coord_lo, caps.coord_hi);
}

std::vector<Rational> random_masses(Rng& rng, std::size_t n, std::uint64_t max_den) {
  if (n == 0) return {};
  const std::uint64_t den = std::max<std::uint64_t>(n, n + rng.below(max_den >= n ? max_den - n + 1 : 1));
  // n - 1 distinct cut points in [1, den) split den into n positive parts.
  std::set<std::uint64_t> cuts;
  while (cuts.size() + 1 < n) cuts.insert(1 + rng.below(den - 1));
  std::vector<Rational> out;
  std::uint64_t prev = 0;
  for (std::uint64_t c : cuts) {
    Rational r(static_cast<unsigned long>(c - prev), static_cast<unsigned long>(den));
    r.canonicalize();
    out.push_back(r);
    prev = c;
  }
  Rational last(static_cast<unsigned long>(den - prev), static_cast<unsigned long>(den));
  last.canonicalize();
  out.push_back(last);
  return out;
}

std::vector<Element> random_set(Rng& rng, const Carrier& carrier, std::size_t size, const SizeCaps& caps,
                                bool nonzero) {
  // Narrow windows on infinite carriers make coincident sums common.
  long lo = caps.coord_lo;
  long hi = caps.coord_hi;
  if (rng.coin()) {
    const long width = std::max<long>(static_cast<long>(size) + 2, rng.between(3, 10));
    lo = std::max(caps.coord_lo, -width / 2);
    hi = std::min(caps.coord_hi, lo + width);
  }
  std::uint64_t room = carrier_size(carrier);
  if (room == 0) room = static_cast<std::uint64_t>(hi - lo + 1);
  if (nonzero) --room;
  size = std::min<std::size_t>(size, room);
  std::set<Element> chosen;
  std::vector<Element> out;
  for (std::size_t attempts = 0; out.size() < size && attempts < 64 * size + 64; ++attempts) {
    Element e = random_element_in(rng, carrier, caps, lo, hi);
    if (nonzero && is_zero(carrier, e)) continue;
    if (chosen.insert(e).second) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Element> random_sidon_set(Rng& rng, const Carrier& carrier, std::size_t size, const SizeCaps& caps) {
  std::vector<Element> out;
  for (std::size_t attempts = 0; out.size() < size && attempts < 32 * size + 32; ++attempts) {
    Element e = random_element(rng, carrier, caps);
    if (std::find(out.begin(), out.end(), e) != out.end()) continue;
    out.push_back(e);
    if (!is_sidon_set(carrier, out)) out.pop_back();
  }
  return out;
}

Dist random_dist_on(Rng& rng, const Carrier& carrier, std::span<const Element> support, std::uint64_t max_den) {
  if (support.empty()) throw Error(ErrorCode::EmptySupport, "random_dist_on needs a support");
  const auto masses = random_masses(rng, support.size(), std::max<std::uint64_t>(max_den, support.size()));
  Dist::Map m;
  for (std::size_t i = 0; i < support.size(); ++i) m.emplace(carrier.canonicalize(support[i]), masses[i]);
  return Dist(carrier, std::move(m));
}

Dist random_dist(Rng& rng, const Carrier& carrier, const SizeCaps& caps, bool nonzero) {
  const std::size_t size = 1 + rng.below(caps.max_support);
  auto support = random_set(rng, carrier, size, caps, nonzero);
  if (support.empty()) support.push_back(carrier.canonicalize(Element::scalar(1)));
  return random_dist_on(rng, carrier, support, caps.max_den);
}

Joint random_joint(Rng& rng, const Carrier& carrier, std::size_t arity, const SizeCaps& caps) {
  const std::size_t atoms = 1 + rng.below(caps.max_support);
  // Coordinates are drawn from one shared random pool so that tuples overlap
  // and the variables come out dependent.
  const auto pool = random_set(rng, carrier, std::max<std::size_t>(2, atoms), caps);
  std::set<Tuple> tuples;
  for (std::size_t attempts = 0; tuples.size() < atoms && attempts < 64 * atoms; ++attempts) {
    Tuple t;
    for (std::size_t k = 0; k < arity; ++k) t.push_back(rng.pick<Element>(pool));
    tuples.insert(std::move(t));
  }
  const auto masses = random_masses(rng, tuples.size(), std::max<std::uint64_t>(caps.max_den, tuples.size()));
  Joint::Map m;
  std::size_t i = 0;
  for (const Tuple& t : tuples) m.emplace(t, masses[i++]);
  return Joint(carrier, arity, std::move(m));
}

}  // namespace entropic::gen
