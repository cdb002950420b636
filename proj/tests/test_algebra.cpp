#include <gtest/gtest.h>

#include <vector>

#include "entropic/algebra.hpp"
#include "entropic/random.hpp"
#include "entropic/word.hpp"
#include "test_util.hpp"

using namespace entropic;

using testutil::code_of;
using testutil::el;

TEST(Canonicalize, ReducesModN) {
  auto g = GroupSpec::integers_mod(12);
  EXPECT_EQ(canonicalize(g, el({14}).coords), el({2}));
  EXPECT_EQ(canonicalize(g, el({-1}).coords), el({11}));
}

TEST(Canonicalize, MultiplicativeGroup) {
  auto g = GroupSpec::fp_multiplicative(7);
  EXPECT_EQ(canonicalize(g, el({-1}).coords), el({6}));
  EXPECT_EQ(code_of([&] { canonicalize(g, el({7}).coords); }), ErrorCode::ZeroInMultiplicativeGroup);
  EXPECT_EQ(code_of([&] { canonicalize(g, el({0}).coords); }), ErrorCode::ZeroInMultiplicativeGroup);
}

TEST(Canonicalize, ArityMismatch) {
  auto g = GroupSpec::product({GroupSpec::integers_mod(2), GroupSpec::integers_mod(3)});
  EXPECT_EQ(code_of([&] { canonicalize(g, el({1}).coords); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(code_of([&] { canonicalize(GroupSpec::integers(), el({1, 2}).coords); }), ErrorCode::ArityMismatch);
}

TEST(Canonicalize, Idempotent) {
  gen::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    Carrier c = rng.coin() ? gen::random_group(rng) : gen::random_ring(rng);
    Element e = gen::random_element(rng, c, {});
    EXPECT_TRUE(c.is_canonical(e));
    EXPECT_EQ(c.canonicalize(e), e);
  }
}

TEST(Spec, Errors) {
  EXPECT_EQ(code_of([] { GroupSpec::fp_additive(9); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { GroupSpec::fp_multiplicative(1); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { RingSpec::fp(15); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { GroupSpec::integers_mod(0); }), ErrorCode::InvalidModulus);
  EXPECT_EQ(code_of([] { GroupSpec::product({}); }), ErrorCode::EmptyProduct);
}

TEST(Spec, ProductArityFlattens) {
  auto g = GroupSpec::product({GroupSpec::integers(), GroupSpec::product({GroupSpec::integers_mod(2),
                                                                           GroupSpec::integers_mod(3)})});
  EXPECT_EQ(g.arity(), 3u);
  EXPECT_FALSE(g.is_finite());
  EXPECT_TRUE(GroupSpec::integers_mod(5).is_finite());
}

TEST(GroupOp, Examples) {
  EXPECT_EQ(group_op(GroupSpec::integers(), el({-7}), el({5})), el({-2}));
  EXPECT_EQ(group_op(GroupSpec::fp_multiplicative(7), el({3}), el({5})), el({1}));
  auto g = GroupSpec::product({GroupSpec::integers_mod(2), GroupSpec::integers_mod(3)});
  EXPECT_EQ(group_op(g, el({1, 2}), el({1, 2})), el({0, 1}));
  EXPECT_EQ(code_of([&] { group_op(g, el({1}), el({1, 2})); }), ErrorCode::ArityMismatch);
}

TEST(GroupOp, InverseAndRingProduct) {
  EXPECT_EQ(group_inv(GroupSpec::integers_mod(5), el({2})), el({3}));
  EXPECT_EQ(group_inv(GroupSpec::fp_multiplicative(7), el({3})), el({5}));
  EXPECT_EQ(group_identity(GroupSpec::fp_multiplicative(7)), el({1}));
  EXPECT_EQ(ring_mul(RingSpec::fp(7), el({3}), el({5})), el({1}));
  EXPECT_EQ(ring_mul(RingSpec::integer_ring(), el({-4}), el({3})), el({-12}));
  EXPECT_EQ(ring_mul(RingSpec::fp(7), el({0}), el({5})), el({0}));
  EXPECT_EQ(ring_neg(RingSpec::fp(7), el({3})), el({4}));
}

TEST(GroupOp, AxiomsOnRandomTriples) {
  std::vector<GroupSpec> specs = {
      GroupSpec::integers(),
      GroupSpec::integers_mod(1),
      GroupSpec::integers_mod(12),
      GroupSpec::fp_additive(11),
      GroupSpec::fp_multiplicative(13),
      GroupSpec::product({GroupSpec::integers_mod(4), GroupSpec::integers(), GroupSpec::fp_multiplicative(5)}),
  };
  gen::Rng rng(11);
  for (const auto& g : specs) {
    Carrier c(g);
    Element id = group_identity(g);
    for (int t = 0; t < 300; ++t) {
      Element a = gen::random_element(rng, c, {});
      Element b = gen::random_element(rng, c, {});
      Element d = gen::random_element(rng, c, {});
      EXPECT_EQ(group_op(g, group_op(g, a, b), d), group_op(g, a, group_op(g, b, d))) << g.to_string();
      EXPECT_EQ(group_op(g, a, b), group_op(g, b, a)) << g.to_string();
      EXPECT_EQ(group_op(g, a, id), a) << g.to_string();
      EXPECT_EQ(group_op(g, a, group_inv(g, a)), id) << g.to_string();
      EXPECT_TRUE(is_canonical(g, group_op(g, a, b)));
    }
  }
}

TEST(RingOps, DistributiveOnRandomTriples) {
  gen::Rng rng(12);
  for (const auto& r : {RingSpec::integer_ring(), RingSpec::fp(2), RingSpec::fp(13)}) {
    Carrier c(r);
    for (int t = 0; t < 300; ++t) {
      Element a = gen::random_element(rng, c, {});
      Element b = gen::random_element(rng, c, {});
      Element d = gen::random_element(rng, c, {});
      EXPECT_EQ(ring_mul(r, a, ring_add(r, b, d)), ring_add(r, ring_mul(r, a, b), ring_mul(r, a, d)));
      EXPECT_EQ(ring_mul(r, a, b), ring_mul(r, b, a));
      EXPECT_EQ(ring_add(r, a, ring_neg(r, a)), c.zero());
    }
  }
}

TEST(Carrier, MulOnGroupThrows) {
  Carrier g(GroupSpec::integers());
  EXPECT_FALSE(g.has_product());
  EXPECT_EQ(code_of([&] { g.mul(el({1}), el({2})); }), ErrorCode::RingOpOnGroup);
  EXPECT_TRUE(Carrier(GroupSpec::fp_multiplicative(5)).has_product());
  EXPECT_TRUE(Carrier(RingSpec::integer_ring()).has_product());
}

TEST(Word, ParseAndPrintRoundTrip) {
  for (const char* text : {"x0+x1", "x0-x1", "x0*x1+x2*x3", "-x2", "x0*x1-x2"}) {
    Word w = Word::parse(text);
    EXPECT_EQ(Word::parse(w.to_string()).to_string(), w.to_string()) << text;
  }
  EXPECT_EQ(code_of([] { Word::parse("x0+"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { Word::parse("y0"); }), ErrorCode::ParseError);
}

TEST(Word, EvalAndValidate) {
  Carrier z(GroupSpec::integers());
  Carrier f7(RingSpec::fp(7));
  Tuple t = {el({3}), el({5}), el({6}), el({2})};
  EXPECT_EQ(words::sum01().eval(z, t), el({8}));
  EXPECT_EQ(words::diff01().eval(z, t), el({-2}));
  Word kt = Word::parse("x0*x1+x2*x3");
  EXPECT_EQ(kt.eval(f7, t), el({(15 + 12) % 7}));
  EXPECT_TRUE(kt.uses_product());
  EXPECT_EQ(kt.max_index(), 3u);
  EXPECT_EQ(code_of([&] { kt.validate(z, 4); }), ErrorCode::RingOpOnGroup);
  EXPECT_EQ(code_of([&] { kt.validate(f7, 3); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(Word::coord(2).as_coord(), std::optional<std::size_t>(2));
  EXPECT_FALSE(words::sum01().as_coord().has_value());
}
