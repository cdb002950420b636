#include "entropic/distribution.hpp"

#include <algorithm>
#include <set>

namespace entropic {

namespace {

template <typename Key>
void prune_and_check(std::map<Key, Rational>& probs) {
  Rational total = 0;
  for (auto it = probs.begin(); it != probs.end();) {
    const int s = sgn(it->second);
    if (s < 0) throw Error(ErrorCode::InvalidDistribution, "negative probability " + it->second.get_str());
    if (s == 0) {
      it = probs.erase(it);
      continue;
    }
    total += it->second;
    ++it;
  }
  if (probs.empty()) throw Error(ErrorCode::EmptySupport, "distribution has no atoms");
  if (total != 1) throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + total.get_str());
}

void require_same_carrier(const Carrier& a, const Carrier& b) {
  if (a != b) throw Error(ErrorCode::SpecMismatch, a.to_string() + " vs " + b.to_string());
}

}  // namespace

// ---------------------------------------------------------------------------
// Dist / Joint

Dist::Dist(Carrier carrier, Map probs) : carrier_(std::move(carrier)), probs_(std::move(probs)) {
  for (const auto& [e, p] : probs_) {
    if (!carrier_.is_canonical(e)) {
      throw Error(ErrorCode::NonCanonical, e.to_string() + " is not canonical in " + carrier_.to_string());
    }
  }
  prune_and_check(probs_);
}

Dist Dist::point_mass(const Carrier& carrier, const Element& at) {
  return Dist(carrier, {{carrier.canonicalize(at), Rational(1)}});
}

std::vector<Element> Dist::support() const {
  std::vector<Element> out;
  out.reserve(probs_.size());
  for (const auto& [e, p] : probs_) out.push_back(e);
  return out;
}

const Rational& Dist::max_prob() const {
  return std::max_element(probs_.begin(), probs_.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->second;
}

Joint::Joint(Carrier carrier, std::size_t arity, Map probs)
    : carrier_(std::move(carrier)), arity_(arity), probs_(std::move(probs)) {
  if (arity_ == 0) throw Error(ErrorCode::ArityMismatch, "joint arity must be >= 1");
  for (const auto& [t, p] : probs_) {
    if (t.size() != arity_) {
      throw Error(ErrorCode::ArityMismatch,
                  "tuple of length " + std::to_string(t.size()) + " in joint of arity " + std::to_string(arity_));
    }
    for (const Element& e : t) {
      if (!carrier_.is_canonical(e)) {
        throw Error(ErrorCode::NonCanonical, e.to_string() + " is not canonical in " + carrier_.to_string());
      }
    }
  }
  prune_and_check(probs_);
}

Joint::Joint(const Dist& d) : carrier_(d.carrier()), arity_(1) {
  for (const auto& [e, p] : d.probs()) probs_.emplace_hint(probs_.end(), Tuple{e}, p);
}

Dist Joint::as_dist() const {
  if (arity_ != 1) throw Error(ErrorCode::ArityMismatch, "joint of arity " + std::to_string(arity_) + " is not a Dist");
  Dist::Map m;
  for (const auto& [t, p] : probs_) m.emplace_hint(m.end(), t.front(), p);
  return Dist(carrier_, std::move(m));
}

// ---------------------------------------------------------------------------
// Constructions

Dist uniform_on(const Carrier& carrier, std::span<const Element> support) {
  if (support.empty()) throw Error(ErrorCode::EmptySupport, "uniform_on needs a non-empty support");
  Dist::Map m;
  const Rational mass(1, static_cast<unsigned long>(support.size()));
  for (const Element& raw : support) {
    Element e = carrier.canonicalize(raw);
    if (!m.emplace(e, mass).second) {
      throw Error(ErrorCode::DuplicateElement, e.to_string() + " listed twice");
    }
  }
  return Dist(carrier, std::move(m));
}

Dist uniform_on(const Carrier& carrier, std::initializer_list<long> scalars) {
  std::vector<Element> support;
  support.reserve(scalars.size());
  for (long v : scalars) support.push_back(Element::scalar(v));
  return uniform_on(carrier, support);
}

Joint independent_join(const Joint& a, const Joint& b) {
  require_same_carrier(a.carrier(), b.carrier());
  Joint::Map m;
  for (const auto& [ta, pa] : a.probs()) {
    for (const auto& [tb, pb] : b.probs()) {
      Tuple t;
      t.reserve(ta.size() + tb.size());
      t.insert(t.end(), ta.begin(), ta.end());
      t.insert(t.end(), tb.begin(), tb.end());
      m.emplace_hint(m.end(), std::move(t), pa * pb);
    }
  }
  return Joint(a.carrier(), a.arity() + b.arity(), std::move(m));
}

Joint independent_join(std::span<const Joint> parts) {
  if (parts.empty()) throw Error(ErrorCode::ArityMismatch, "independent_join needs at least one part");
  Joint acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = independent_join(acc, parts[i]);
  return acc;
}

Joint independent_power(const Joint& j, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::ArityMismatch, "independent_power needs n >= 1");
  Joint acc = j;
  for (std::size_t i = 1; i < n; ++i) acc = independent_join(acc, j);
  return acc;
}

Joint marginal(const Joint& j, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorCode::IndexOutOfRange, "marginal needs at least one index");
  for (std::size_t i : indices) {
    if (i >= j.arity()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside arity " + std::to_string(j.arity()));
    }
  }
  Joint::Map m;
  for (const auto& [t, p] : j.probs()) {
    Tuple key;
    key.reserve(indices.size());
    for (std::size_t i : indices) key.push_back(t[i]);
    m[std::move(key)] += p;
  }
  return Joint(j.carrier(), indices.size(), std::move(m));
}

Joint marginal(const Joint& j, std::initializer_list<std::size_t> indices) {
  return marginal(j, std::span<const std::size_t>(indices.begin(), indices.size()));
}

Dist marginal_dist(const Joint& j, std::size_t index) {
  return marginal(j, std::span<const std::size_t>(&index, 1)).as_dist();
}

Dist pushforward(const Joint& j, const Word& combiner) {
  combiner.validate(j.carrier(), j.arity());
  Dist::Map m;
  for (const auto& [t, p] : j.probs()) m[combiner.eval(j.carrier(), t)] += p;
  return Dist(j.carrier(), std::move(m));
}

Dist combine_independent(const Dist& x, const Dist& y, const Word& combiner) {
  require_same_carrier(x.carrier(), y.carrier());
  combiner.validate(x.carrier(), 2);
  Dist::Map m;
  Tuple pair(2);
  for (const auto& [a, pa] : x.probs()) {
    pair[0] = a;
    for (const auto& [b, pb] : y.probs()) {
      pair[1] = b;
      m[combiner.eval(x.carrier(), pair)] += pa * pb;
    }
  }
  return Dist(x.carrier(), std::move(m));
}

Joint project(const Joint& j, std::span<const Word> words) {
  if (words.empty()) throw Error(ErrorCode::IndexOutOfRange, "project needs at least one word");
  for (const Word& w : words) w.validate(j.carrier(), j.arity());
  Joint::Map m;
  for (const auto& [t, p] : j.probs()) {
    Tuple key;
    key.reserve(words.size());
    for (const Word& w : words) key.push_back(w.eval(j.carrier(), t));
    m[std::move(key)] += p;
  }
  return Joint(j.carrier(), words.size(), std::move(m));
}

Joint condition(const Joint& j, const Word& statistic, const Element& value) {
  statistic.validate(j.carrier(), j.arity());
  Joint::Map m;
  Rational mass = 0;
  for (const auto& [t, p] : j.probs()) {
    if (statistic.eval(j.carrier(), t) == value) {
      m.emplace_hint(m.end(), t, p);
      mass += p;
    }
  }
  if (m.empty()) {
    throw Error(ErrorCode::ZeroProbabilityEvent, statistic.to_string() + " = " + value.to_string() + " has probability 0");
  }
  for (auto& [t, p] : m) p /= mass;
  return Joint(j.carrier(), j.arity(), std::move(m));
}

Joint cond_indep_trials(const Joint& j, const Word& statistic) {
  statistic.validate(j.carrier(), j.arity());
  struct Fiber {
    Rational mass = 0;
    std::vector<const Joint::Map::value_type*> atoms;
  };
  std::map<Element, Fiber> fibers;
  for (const auto& atom : j.probs()) {
    Fiber& f = fibers[statistic.eval(j.carrier(), atom.first)];
    f.mass += atom.second;
    f.atoms.push_back(&atom);
  }
  Joint::Map m;
  for (const auto& [z, f] : fibers) {
    for (const auto* a : f.atoms) {
      const Rational scaled = a->second / f.mass;
      for (const auto* b : f.atoms) {
        Tuple t;
        t.reserve(2 * j.arity());
        t.insert(t.end(), a->first.begin(), a->first.end());
        t.insert(t.end(), b->first.begin(), b->first.end());
        m.emplace(std::move(t), scaled * b->second);
      }
    }
  }
  return Joint(j.carrier(), 2 * j.arity(), std::move(m));
}

// ---------------------------------------------------------------------------
// Bipartite graphs

BipartiteGraph::BipartiteGraph(std::vector<Element> left, std::vector<Element> right, std::vector<Edge> edges)
    : left_(std::move(left)), right_(std::move(right)), edges_(std::move(edges)) {
  if (edges_.empty()) throw Error(ErrorCode::EmptyGraph, "graph has no edges");
  std::set<Edge> seen;
  for (const Edge& e : edges_) {
    if (e.first >= left_.size() || e.second >= right_.size()) {
      throw Error(ErrorCode::InvalidGraph,
                  "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") out of range");
    }
    if (!seen.insert(e).second) {
      throw Error(ErrorCode::InvalidGraph,
                  "duplicate edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")");
    }
  }
}

BipartiteGraph BipartiteGraph::complete(std::vector<Element> left, std::vector<Element> right) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t k = 0; k < right.size(); ++k) edges.emplace_back(i, k);
  }
  return BipartiteGraph(std::move(left), std::move(right), std::move(edges));
}

namespace {

bool regular(std::size_t vertices, const std::vector<BipartiteGraph::Edge>& edges, bool left_side) {
  std::vector<std::size_t> degree(vertices, 0);
  for (const auto& e : edges) ++degree[left_side ? e.first : e.second];
  return std::all_of(degree.begin(), degree.end(), [&](std::size_t d) { return d > 0 && d == degree.front(); });
}

}  // namespace

bool BipartiteGraph::left_regular() const { return regular(left_.size(), edges_, true); }
bool BipartiteGraph::right_regular() const { return regular(right_.size(), edges_, false); }

Joint graph_coupling(const BipartiteGraph& g, const Carrier& carrier) {
  const Rational mass(1, static_cast<unsigned long>(g.edges().size()));
  Joint::Map m;
  for (const auto& [l, r] : g.edges()) {
    m[Tuple{carrier.canonicalize(g.left()[l]), carrier.canonicalize(g.right()[r])}] += mass;
  }
  return Joint(carrier, 2, std::move(m));
}

}  // namespace entropic
