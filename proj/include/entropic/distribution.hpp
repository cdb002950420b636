#pragma once

// Finitely supported probability distributions with exact rational masses.
//
// Dist is a single carrier-valued random variable; Joint is a k-tuple of them
// sharing one carrier. Every constructor checks the invariants (positive
// masses, total mass exactly one, canonical keys), so any value that exists
// is valid. Values are immutable once built.

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "entropic/algebra.hpp"
#include "entropic/word.hpp"

namespace entropic {

class Dist {
 public:
  using Map = std::map<Element, Rational>;

  /// Zero entries are dropped. Throws InvalidDistribution, EmptySupport or
  /// NonCanonical.
  Dist(Carrier carrier, Map probs);

  static Dist point_mass(const Carrier& carrier, const Element& at);

  const Carrier& carrier() const noexcept { return carrier_; }
  const Map& probs() const noexcept { return probs_; }
  std::size_t support_size() const noexcept { return probs_.size(); }
  std::vector<Element> support() const;
  const Rational& max_prob() const;

  friend bool operator==(const Dist& a, const Dist& b) {
    return a.carrier_ == b.carrier_ && a.probs_ == b.probs_;
  }

 private:
  Carrier carrier_;
  Map probs_;
};

class Joint {
 public:
  using Map = std::map<Tuple, Rational>;

  Joint(Carrier carrier, std::size_t arity, Map probs);
  /// The arity-1 joint of a single variable.
  Joint(const Dist& d);  // NOLINT(google-explicit-constructor)

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t arity() const noexcept { return arity_; }
  const Map& probs() const noexcept { return probs_; }
  std::size_t support_size() const noexcept { return probs_.size(); }

  /// Arity-1 joints convert back to a Dist; other arities throw ArityMismatch.
  Dist as_dist() const;

  friend bool operator==(const Joint& a, const Joint& b) {
    return a.carrier_ == b.carrier_ && a.arity_ == b.arity_ && a.probs_ == b.probs_;
  }

 private:
  Carrier carrier_;
  std::size_t arity_;
  Map probs_;
};

/// Uniform distribution on `support`, canonicalised first. Throws EmptySupport
/// or DuplicateElement.
Dist uniform_on(const Carrier& carrier, std::span<const Element> support);
Dist uniform_on(const Carrier& carrier, std::initializer_list<long> scalars);

/// Product measure; the arity of the result is the sum of the arities.
Joint independent_join(std::span<const Joint> parts);
Joint independent_join(const Joint& a, const Joint& b);
/// n independent copies of one variable.
Joint independent_power(const Joint& j, std::size_t n);

/// Projection onto the listed coordinates, in the order given.
Joint marginal(const Joint& j, std::span<const std::size_t> indices);
Joint marginal(const Joint& j, std::initializer_list<std::size_t> indices);
Dist marginal_dist(const Joint& j, std::size_t index);

/// Distribution of combiner(X_0, ..., X_{k-1}).
Dist pushforward(const Joint& j, const Word& combiner);
/// Distribution of combiner(X, Y) for independent X, Y, without building the
/// product joint. The combiner reads coordinates 0 and 1.
Dist combine_independent(const Dist& x, const Dist& y, const Word& combiner);
/// Joint distribution of the tuple (w_0(X), ..., w_{m-1}(X)).
Joint project(const Joint& j, std::span<const Word> words);

/// The renormalised restriction to {statistic = value}.
Joint condition(const Joint& j, const Word& statistic, const Element& value);

/// Two conditionally independent trials of the tuple relative to the
/// statistic: P(t1, t2) = P(t1) P(t2) / P(Z = z) whenever
/// statistic(t1) = statistic(t2) = z. The result has arity 2k, trial one
/// occupying coordinates [0, k) and trial two [k, 2k).
Joint cond_indep_trials(const Joint& j, const Word& statistic);

/// Edges (left index, right index) between two vertex lists. Validated at
/// construction: indices in range, no duplicate edges, at least one edge.
class BipartiteGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  BipartiteGraph(std::vector<Element> left, std::vector<Element> right, std::vector<Edge> edges);

  /// The complete bipartite graph left x right.
  static BipartiteGraph complete(std::vector<Element> left, std::vector<Element> right);

  const std::vector<Element>& left() const noexcept { return left_; }
  const std::vector<Element>& right() const noexcept { return right_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Every left vertex has the same positive degree, so a uniformly sampled
  /// edge has a uniform left endpoint.
  bool left_regular() const;
  bool right_regular() const;

 private:
  std::vector<Element> left_;
  std::vector<Element> right_;
  std::vector<Edge> edges_;
};

/// (X, Y) = endpoints of a uniformly random edge. X + Y then samples the
/// partial sumset of the graph.
Joint graph_coupling(const BipartiteGraph& g, const Carrier& carrier);

}  // namespace entropic
