#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "entropic/algebra.hpp"

namespace entropic {

/// A formal expression over the coordinates of a joint distribution:
/// coordinate references combined with +, - (the group law) and, on ring
/// carriers, binary products. "x0+x1", "x0-x1", "x0*x1+x2*x3".
///
/// Words are immutable and share structure, so copying is cheap.
class Word {
 public:
  static Word coord(std::size_t index);

  /// Parses the textual form produced by to_string(). Throws ParseError.
  static Word parse(std::string_view text);

  friend Word operator+(const Word& a, const Word& b);
  friend Word operator-(const Word& a, const Word& b);
  friend Word operator*(const Word& a, const Word& b);
  Word operator-() const;

  Element eval(const Carrier& carrier, std::span<const Element> tuple) const;

  /// Largest coordinate referenced.
  std::size_t max_index() const;
  bool uses_product() const;
  /// Whether every referenced coordinate belongs to `allowed`.
  bool references_only(std::span<const std::size_t> allowed) const;

  /// Throws IndexOutOfRange or RingOpOnGroup when the word cannot be evaluated
  /// on tuples of the given arity over `carrier`.
  void validate(const Carrier& carrier, std::size_t arity) const;

  std::string to_string() const;

  /// If the word is a bare coordinate reference, its index.
  std::optional<std::size_t> as_coord() const;

 private:
  enum class Op { Coord, Add, Sub, Neg, Mul };
  struct Node {
    Op op;
    std::size_t index = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Word(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Word make(Op op, const Word& a, const Word* b);

  std::shared_ptr<const Node> node_;

  friend struct WordAccess;
};

namespace words {

inline Word x(std::size_t i) { return Word::coord(i); }
inline Word sum01() { return x(0) + x(1); }
inline Word diff01() { return x(0) - x(1); }
inline Word product01() { return x(0) * x(1); }

}  // namespace words

}  // namespace entropic
