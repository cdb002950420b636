#include "entropic/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace entropic {

double log2_big(const BigInt& v) {
  const std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (bits <= 1000) return std::log2(v.get_d());
  const std::size_t shift = bits - 64;
  BigInt top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), v.get_mpz_t(), shift);
  return std::log2(top.get_d()) + static_cast<double>(shift);
}

namespace {

double atom_term(const Rational& p) {
  const double surprisal = log2_big(p.get_den()) - log2_big(p.get_num());
  return p.get_d() * surprisal;
}

template <typename Map>
Bits entropy_of(const Map& probs) {
  Bits h = 0;
  for (const auto& [k, p] : probs) h += atom_term(p);
  return h;
}

// Entropy of a finite collection of masses whose total is `mass`, i.e. the
// entropy of the renormalised sub-distribution.
Bits fibre_entropy(const std::map<Tuple, Rational>& masses, const Rational& total) {
  Bits h = 0;
  for (const auto& [k, p] : masses) h += atom_term(Rational(p / total));
  return h;
}

void check_indices(const Joint& j, std::span<const std::size_t> idx) {
  for (std::size_t i : idx) {
    if (i >= j.arity()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside arity " + std::to_string(j.arity()));
    }
  }
}

Tuple pick(const Tuple& t, std::span<const std::size_t> idx) {
  Tuple out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(t[i]);
  return out;
}

template <typename KeyFn>
Bits fibrewise(const Joint& j, std::span<const std::size_t> target, KeyFn key_of) {
  using FibreKey = decltype(key_of(j.probs().begin()->first));
  struct Fibre {
    Rational mass = 0;
    std::map<Tuple, Rational> target;
  };
  std::map<FibreKey, Fibre> fibres;
  for (const auto& [t, p] : j.probs()) {
    Fibre& f = fibres[key_of(t)];
    f.mass += p;
    f.target[pick(t, target)] += p;
  }
  Bits h = 0;
  for (const auto& [g, f] : fibres) h += f.mass.get_d() * fibre_entropy(f.target, f.mass);
  return h;
}

}  // namespace

Bits entropy(const Dist& d) { return entropy_of(d.probs()); }
Bits entropy(const Joint& j) { return entropy_of(j.probs()); }

Bits conditional_entropy(const Joint& j, std::span<const std::size_t> target, std::span<const std::size_t> given) {
  check_indices(j, target);
  check_indices(j, given);
  if (target.empty()) throw Error(ErrorCode::IndexOutOfRange, "empty target index set");
  for (std::size_t i : target) {
    if (std::find(given.begin(), given.end(), i) != given.end()) {
      throw Error(ErrorCode::IndexOverlap, "coordinate " + std::to_string(i) + " is both target and given");
    }
  }
  return fibrewise(j, target, [&](const Tuple& t) { return pick(t, given); });
}

Bits conditional_entropy(const Joint& j, std::initializer_list<std::size_t> target,
                         std::initializer_list<std::size_t> given) {
  return conditional_entropy(j, std::span<const std::size_t>(target.begin(), target.size()),
                             std::span<const std::size_t>(given.begin(), given.size()));
}

Bits conditional_entropy_given_statistic(const Joint& j, std::span<const std::size_t> target, const Word& statistic) {
  check_indices(j, target);
  if (target.empty()) throw Error(ErrorCode::IndexOutOfRange, "empty target index set");
  statistic.validate(j.carrier(), j.arity());
  return fibrewise(j, target, [&](const Tuple& t) { return statistic.eval(j.carrier(), t); });
}

Bits conditional_entropy_given_statistic(const Joint& j, std::initializer_list<std::size_t> target,
                                         const Word& statistic) {
  return conditional_entropy_given_statistic(j, std::span<const std::size_t>(target.begin(), target.size()),
                                             statistic);
}

}  // namespace entropic
