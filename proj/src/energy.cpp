#include "entropic/energy.hpp"

#include <cmath>
#include <map>
#include <set>

#include "entropic/serialization.hpp"

namespace entropic {

namespace {

EnergyReport energy_relative_to(const Joint& j, const Word& statistic, double tol) {
  if (j.arity() != 2) {
    throw Error(ErrorCode::ArityMismatch, "energy needs a joint of arity 2, got " + std::to_string(j.arity()));
  }
  EnergyReport r;
  r.via_formula = 2 * entropy(j) - entropy(pushforward(j, statistic));
  r.via_construction = entropy(cond_indep_trials(j, statistic));
  r.value = r.via_formula;
  r.inputs_digest = digest(to_json(j));
  if (std::abs(r.via_formula - r.via_construction) > tol) {
    throw Error(ErrorCode::ConstructionMismatch,
                "formula " + std::to_string(r.via_formula) + " vs construction " + std::to_string(r.via_construction));
  }
  return r;
}

std::vector<Element> canonical_set(const Carrier& carrier, std::span<const Element> a) {
  std::vector<Element> out;
  std::set<Element> seen;
  for (const Element& raw : a) {
    Element e = carrier.canonicalize(raw);
    if (!seen.insert(e).second) throw Error(ErrorCode::DuplicateElement, e.to_string() + " listed twice");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Word product_word(const Carrier& carrier) {
  if (carrier.is_ring()) return words::product01();
  if (carrier.has_product()) return words::sum01();
  throw Error(ErrorCode::RingOpOnGroup, carrier.to_string() + " has no product");
}

EnergyReport additive_energy(const Joint& j, double tol) { return energy_relative_to(j, words::sum01(), tol); }

EnergyReport self_energy(const Dist& d, double tol) {
  return additive_energy(independent_power(Joint(d), 2), tol);
}

EnergyReport mult_energy(const Joint& j, double tol) {
  return energy_relative_to(j, product_word(j.carrier()), tol);
}

EnergyReport mult_self_energy(const Dist& d, double tol) {
  return mult_energy(independent_power(Joint(d), 2), tol);
}

Bits doubling(const Dist& d) {
  return entropy(pushforward(independent_power(Joint(d), 2), words::sum01())) - entropy(d);
}

std::vector<Element> sumset(const Carrier& carrier, std::span<const Element> a, std::span<const Element> b) {
  std::set<Element> out;
  for (const Element& x : a) {
    for (const Element& y : b) out.insert(carrier.add(carrier.canonicalize(x), carrier.canonicalize(y)));
  }
  return {out.begin(), out.end()};
}

std::uint64_t set_energy(const Carrier& carrier, std::span<const Element> a_raw, std::span<const Element> b_raw) {
  const auto a = canonical_set(carrier, a_raw);
  const auto b = canonical_set(carrier, b_raw);
  // a + b = a' + b' is decided by comparing the two sums; precompute them.
  std::vector<std::vector<Element>> sums(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const Element& y : b) sums[i].push_back(carrier.add(a[i], y));
  }
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t i2 = 0; i2 < a.size(); ++i2) {
      for (std::size_t k = 0; k < b.size(); ++k) {
        for (std::size_t k2 = 0; k2 < b.size(); ++k2) {
          if (sums[i][k] == sums[i2][k2]) ++count;
        }
      }
    }
  }
  return count;
}

std::uint64_t set_energy_by_representation(const Carrier& carrier, std::span<const Element> a_raw,
                                           std::span<const Element> b_raw) {
  const auto a = canonical_set(carrier, a_raw);
  const auto b = canonical_set(carrier, b_raw);
  std::map<Element, std::uint64_t> r;
  for (const Element& x : a) {
    for (const Element& y : b) ++r[carrier.add(x, y)];
  }
  std::uint64_t total = 0;
  for (const auto& [s, n] : r) total += n * n;
  return total;
}

bool is_sidon_set(const Carrier& carrier, std::span<const Element> a_raw) {
  const auto a = canonical_set(carrier, a_raw);
  // Each sum must come from a single unordered pair.
  std::map<Element, std::pair<std::size_t, std::size_t>> owner;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = i; k < a.size(); ++k) {
      auto [it, fresh] = owner.emplace(carrier.add(a[i], a[k]), std::make_pair(i, k));
      if (!fresh && it->second != std::make_pair(i, k)) return false;
    }
  }
  return true;
}

SidonVerdict is_sidon_rv(const Dist& d, double tol) {
  SidonVerdict v;
  v.slack = doubling(d) - entropy(d) + 1;
  v.sidon = v.slack >= -tol;
  return v;
}

}  // namespace entropic
