#include "entropic/word.hpp"

#include <algorithm>
#include <cctype>

namespace entropic {

struct WordAccess {
  using Node = Word::Node;
  using Op = Word::Op;

  static Element eval(const Node& n, const Carrier& c, std::span<const Element> t) {
    switch (n.op) {
      case Op::Coord: return t[n.index];
      case Op::Add: return c.add(eval(*n.lhs, c, t), eval(*n.rhs, c, t));
      case Op::Sub: return c.sub(eval(*n.lhs, c, t), eval(*n.rhs, c, t));
      case Op::Neg: return c.neg(eval(*n.lhs, c, t));
      case Op::Mul: return c.mul(eval(*n.lhs, c, t), eval(*n.rhs, c, t));
    }
    return {};
  }

  static std::size_t max_index(const Node& n) {
    if (n.op == Op::Coord) return n.index;
    std::size_t m = max_index(*n.lhs);
    if (n.rhs) m = std::max(m, max_index(*n.rhs));
    return m;
  }

  static bool uses_product(const Node& n) {
    if (n.op == Op::Mul) return true;
    if (n.op == Op::Coord) return false;
    return uses_product(*n.lhs) || (n.rhs && uses_product(*n.rhs));
  }

  static bool references_only(const Node& n, std::span<const std::size_t> allowed) {
    if (n.op == Op::Coord) return std::find(allowed.begin(), allowed.end(), n.index) != allowed.end();
    return references_only(*n.lhs, allowed) && (!n.rhs || references_only(*n.rhs, allowed));
  }

  static int precedence(const Node& n) {
    switch (n.op) {
      case Op::Add:
      case Op::Sub: return 1;
      case Op::Mul: return 2;
      case Op::Neg: return 3;
      case Op::Coord: return 4;
    }
    return 0;
  }

  static std::string render(const Node& n) {
    auto wrap = [](const Node& child, int min_prec) {
      std::string s = render(child);
      return precedence(child) < min_prec ? "(" + s + ")" : s;
    };
    switch (n.op) {
      case Op::Coord: return "x" + std::to_string(n.index);
      case Op::Add: return wrap(*n.lhs, 1) + "+" + wrap(*n.rhs, 2);
      case Op::Sub: return wrap(*n.lhs, 1) + "-" + wrap(*n.rhs, 2);
      case Op::Mul: return wrap(*n.lhs, 2) + "*" + wrap(*n.rhs, 3);
      case Op::Neg: return "-" + wrap(*n.lhs, 3);
    }
    return {};
  }
};

namespace {

// expr := term (('+'|'-') term)*
// term := unary ('*' unary)*
// unary := '-' unary | 'x' digits | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Word parse() {
    Word w = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  Word expr() {
    Word w = term();
    for (;;) {
      skip();
      if (eat('+')) {
        w = w + term();
      } else if (eat('-')) {
        w = w - term();
      } else {
        return w;
      }
    }
  }

  Word term() {
    Word w = unary();
    for (;;) {
      skip();
      if (!eat('*')) return w;
      w = w * unary();
    }
  }

  Word unary() {
    skip();
    if (eat('-')) return -unary();
    if (eat('(')) {
      Word w = expr();
      skip();
      if (!eat(')')) fail("expected ')'");
      return w;
    }
    if (eat('x') || eat('X')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_ || pos_ - start > 9) fail("expected a coordinate index after 'x'");
      return Word::coord(std::stoul(std::string(text_.substr(start, pos_ - start))));
    }
    fail("expected a coordinate reference like x0");
    return Word::coord(0);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                "word '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word Word::coord(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Coord;
  n->index = index;
  return Word(std::move(n));
}

Word Word::make(Op op, const Word& a, const Word* b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = a.node_;
  if (b) n->rhs = b->node_;
  return Word(std::move(n));
}

Word Word::parse(std::string_view text) { return Parser(text).parse(); }

Word operator+(const Word& a, const Word& b) { return Word::make(Word::Op::Add, a, &b); }
Word operator-(const Word& a, const Word& b) { return Word::make(Word::Op::Sub, a, &b); }
Word operator*(const Word& a, const Word& b) { return Word::make(Word::Op::Mul, a, &b); }
Word Word::operator-() const { return make(Op::Neg, *this, nullptr); }

Element Word::eval(const Carrier& carrier, std::span<const Element> tuple) const {
  return WordAccess::eval(*node_, carrier, tuple);
}

std::size_t Word::max_index() const { return WordAccess::max_index(*node_); }
bool Word::uses_product() const { return WordAccess::uses_product(*node_); }

bool Word::references_only(std::span<const std::size_t> allowed) const {
  return WordAccess::references_only(*node_, allowed);
}

void Word::validate(const Carrier& carrier, std::size_t arity) const {
  if (max_index() >= arity) {
    throw Error(ErrorCode::IndexOutOfRange,
                "word " + to_string() + " references a coordinate beyond arity " + std::to_string(arity));
  }
  if (uses_product() && !carrier.is_ring()) {
    throw Error(ErrorCode::RingOpOnGroup, "word " + to_string() + " multiplies on group " + carrier.to_string());
  }
}

std::string Word::to_string() const { return WordAccess::render(*node_); }

std::optional<std::size_t> Word::as_coord() const {
  if (node_->op == Op::Coord) return node_->index;
  return std::nullopt;
}

}  // namespace entropic
