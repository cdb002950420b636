#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "entropic/explorer.hpp"
#include "entropic/random.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace entropic;
using namespace entropic::explorer;
using testutil::code_of;
using testutil::el;

namespace {

constexpr double kTol = 1e-9;

bool has_flag(const ScanRecord& r, const std::string& f) {
  return std::find(r.flags.begin(), r.flags.end(), f) != r.flags.end();
}

const ScanRecord* find_record(const std::vector<ScanRecord>& rs, const std::string& descriptor) {
  for (const auto& r : rs)
    if (r.descriptor == descriptor) return &r;
  return nullptr;
}

/// H{X+X'} for X uniform on F_q^*, straight from the closed form.
double subfield_closed_form(long q) {
  double n = static_cast<double>(q - 1);
  return std::log2(n) / n + n * (static_cast<double>(q - 2) / (n * n)) * std::log2(n * n / static_cast<double>(q - 2));
}

}  // namespace

TEST(Hegarty, MatchesPrintedValues) {
  auto h = reproduce_hegarty();
  EXPECT_NEAR(h.h_x, 3.0, kTol);
  EXPECT_NEAR(h.h_y, 3.0, kTol);
  EXPECT_NEAR(h.h_sum, 4.507, 1e-3);
  EXPECT_NEAR(h.h_double, 4.513, 1e-3);
  EXPECT_NEAR(h.a_xy, 7.493, 1e-3);
  EXPECT_NEAR(h.a_x, 7.487, 1e-3);
  EXPECT_NEAR(h.a_x, h.a_y, kTol);
  EXPECT_TRUE(h.violation);
  EXPECT_GT(h.margin, 0.0);
  EXPECT_NEAR(h.margin, h.a_xy - 0.5 * (h.a_x + h.a_y), kTol);
  EXPECT_NEAR(h.margin, 0.006, 5e-4);
  EXPECT_EQ(h.set, (std::vector<long>{-7, -5, -4, -3, 0, 4, 5, 7}));
}

TEST(Sidon012, BitsAndNats) {
  auto s = reproduce_sidon012();
  EXPECT_NEAR(s.h_x, std::log2(3.0), kTol);
  EXPECT_NEAR(s.doubling, 0.61220, 1e-5);
  EXPECT_NEAR(bits_to_nats(s.doubling), 0.4244, 5e-4);
  EXPECT_NEAR(s.sidon_slack, s.doubling - (std::log2(3.0) - 1), kTol);
  EXPECT_TRUE(s.sidon_rv);
  EXPECT_FALSE(s.sidon_set);
}

TEST(Subfield, SmallCases) {
  auto r5 = subfield_example(5);
  EXPECT_NEAR(r5.h_double, 0.25 * 2 + 0.75 * std::log2(16.0 / 3), kTol);
  EXPECT_NEAR(r5.h_double, 2.31128, 1e-5);
  EXPECT_TRUE(r5.matches_closed_form);
  EXPECT_NEAR(r5.m_x, 3 * 2.0, kTol);

  auto r3 = subfield_example(3);
  EXPECT_NEAR(r3.h_double, 1.5, kTol);
  EXPECT_NEAR(r3.m_x, 3.0, kTol);
}

TEST(Subfield, ClosedFormForAllSmallPrimes) {
  for (long q = 3; q <= 101; ++q) {
    if (!is_prime(BigInt(q))) continue;
    auto r = subfield_example(q);
    EXPECT_NEAR(r.h_double, subfield_closed_form(q), kTol) << q;
    EXPECT_NEAR(r.h_double, r.h_double_closed_form, kTol) << q;
    EXPECT_NEAR(r.m_x, 3 * std::log2(static_cast<double>(q - 1)), kTol) << q;
    EXPECT_NEAR(r.a_x, 3 * r.h_x - (r.h_double - r.h_x), kTol) << q;
    EXPECT_TRUE(r.matches_closed_form);
  }
}

TEST(Subfield, ExactConvolutionAgreesWithOracle) {
  for (long q : {7L, 11L, 13L}) {
    std::vector<long> star;
    for (long i = 1; i < q; ++i) star.push_back(i);
    auto sum = oracle::combine(oracle::uniform(star), oracle::uniform(star),
                               [q](const oracle::Key& a, const oracle::Key& b) { return oracle::Key{(a[0] + b[0]) % q}; });
    EXPECT_NEAR(subfield_example(q).h_double, oracle::H(sum), kTol);
  }
}

TEST(Subfield, NonPrimeRejected) {
  EXPECT_EQ(code_of([] { subfield_example(4); }), ErrorCode::NonPrimeQ);
  EXPECT_EQ(code_of([] { subfield_example(2); }), ErrorCode::NonPrimeQ);
  EXPECT_EQ(code_of([] { subfield_example(9); }), ErrorCode::NonPrimeQ);
}

TEST(Sumproduct, SubgroupOfF7) {
  SumproductConfig cfg;
  cfg.p = 7;
  cfg.max_support = 3;
  auto res = sumproduct_scan(cfg);
  const ScanRecord* r = find_record(res.records, "{1,2,4}");
  ASSERT_NE(r, nullptr);
  EXPECT_NEAR(r->m, 3 * std::log2(3.0), kTol);
  EXPECT_LT(r->a, 3 * r->h - 1e-3);
  EXPECT_TRUE(has_flag(*r, "subgroup"));
  auto pairs = oracle::combine(oracle::uniform({1, 2, 4}), oracle::uniform({1, 2, 4}),
                               [](const oracle::Key& a, const oracle::Key& b) { return oracle::Key{(a[0] + b[0]) % 7}; });
  EXPECT_NEAR(r->a, 4 * std::log2(3.0) - oracle::H(pairs), kTol);
}

TEST(Sumproduct, FullGroupOfF5IsInWindow) {
  SumproductConfig cfg;
  cfg.p = 5;
  cfg.max_support = 4;
  auto res = sumproduct_scan(cfg);
  const ScanRecord* r = find_record(res.records, "{1,2,3,4}");
  ASSERT_NE(r, nullptr);
  EXPECT_NEAR(r->h, 2.0, kTol);
  EXPECT_TRUE(has_flag(*r, "in_window"));
  EXPECT_TRUE(has_flag(*r, "subgroup"));
}

TEST(Sumproduct, SingletonsHaveUndefinedRatio) {
  SumproductConfig cfg;
  cfg.p = 11;
  cfg.max_support = 1;
  auto res = sumproduct_scan(cfg);
  EXPECT_EQ(res.records.size(), 10u);
  for (const auto& r : res.records) {
    EXPECT_FALSE(r.ratio.has_value());
    EXPECT_FALSE(r.epsilon().has_value());
    EXPECT_TRUE(has_flag(r, "h_zero"));
  }
  EXPECT_FALSE(res.min_epsilon_in_window.has_value());
}

TEST(Sumproduct, SubgroupsAreExtremalAndRecordsSorted) {
  for (long p : {5L, 7L, 11L, 13L}) {
    SumproductConfig cfg;
    cfg.p = p;
    cfg.max_support = 4;
    auto res = sumproduct_scan(cfg);
    std::size_t subgroups = 0;
    for (const auto& r : res.records) {
      if (has_flag(r, "subgroup")) {
        ++subgroups;
        EXPECT_NEAR(r.m, 3 * r.h, kTol) << r.descriptor;
      }
      EXPECT_LE(r.a, 3 * r.h + kTol);
      EXPECT_LE(r.m, 3 * r.h + kTol);
    }
    EXPECT_GE(subgroups, 1u);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
      auto a = res.records[i - 1].epsilon(), b = res.records[i].epsilon();
      if (a && b) {
        EXPECT_LE(*a, *b + 1e-15);
      }
    }
  }
}

TEST(Sumproduct, RandomModeIsDeterministic) {
  SumproductConfig cfg;
  cfg.p = 37;
  cfg.mode = SumproductConfig::Mode::Random;
  cfg.seed = 5;
  cfg.trials = 30;
  auto a = records_to_csv(sumproduct_scan(cfg).records);
  auto b = records_to_csv(sumproduct_scan(cfg).records);
  EXPECT_EQ(a, b);
  cfg.seed = 6;
  EXPECT_NE(records_to_csv(sumproduct_scan(cfg).records), a);
}

TEST(Sumproduct, Errors) {
  SumproductConfig cfg;
  cfg.p = 9;
  EXPECT_EQ(code_of([&] { sumproduct_scan(cfg); }), ErrorCode::InvalidPrime);
  cfg.p = 2;
  EXPECT_EQ(code_of([&] { sumproduct_scan(cfg); }), ErrorCode::InvalidPrime);
  cfg.p = 37;
  EXPECT_EQ(code_of([&] { sumproduct_scan(cfg); }), ErrorCode::InvalidPrime);
  cfg.p = 11;
  cfg.max_support = 0;
  EXPECT_EQ(code_of([&] { sumproduct_scan(cfg); }), ErrorCode::SupportTooLarge);
  cfg.max_support = 11;
  EXPECT_EQ(code_of([&] { sumproduct_scan(cfg); }), ErrorCode::SupportTooLarge);
}

TEST(Gk, Examples) {
  Carrier f5 = RingSpec::fp(5);
  auto pm = gk_scan(5, 1, Dist::point_mass(f5, el({0})));
  EXPECT_NEAR(pm.lhs, 0.0, kTol);
  EXPECT_NEAR(pm.rhs, -1.0, kTol);
  EXPECT_NEAR(pm.slack, 1.0, kTol);

  auto star = gk_scan(5, 1, uniform_on(f5, {1, 2, 3, 4}));
  EXPECT_NEAR(star.lhs, 2.0, kTol);
  EXPECT_NEAR(star.rhs, std::log2(5.0) - 1, kTol);

  Carrier f7 = RingSpec::fp(7);
  auto two = gk_scan(7, 2, uniform_on(f7, {0, 1}));
  oracle::Pmf law;
  for (long a : {0, 1})
    for (long b : {0, 1})
      for (long c : {0, 1})
        for (long d : {0, 1}) law[{(a * b + c * d) % 7}] += 1.0 / 16;
  EXPECT_NEAR(two.lhs, oracle::H(law), kTol);
  EXPECT_NEAR(two.rhs, std::min(2.0, std::log2(7.0)) - 1, kTol);
  EXPECT_NEAR(two.slack, two.lhs - two.rhs, kTol);
}

TEST(Gk, NonDecreasingInK) {
  gen::Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    Carrier f = RingSpec::fp(11);
    Dist d = gen::random_dist(rng, f, {4, 0, 10, 16});
    auto r = gk_scan(11, 4, d);
    ASSERT_EQ(r.lhs_by_k.size(), 4u);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_GE(r.lhs_by_k[k], r.lhs_by_k[k - 1] - kTol);
  }
}

TEST(Gk, Errors) {
  Carrier f7 = RingSpec::fp(7);
  Dist d = uniform_on(f7, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(code_of([&] { gk_scan(7, 10, d, 1000); }), ErrorCode::BudgetExceeded);
  EXPECT_EQ(code_of([&] { gk_scan(8, 1, d); }), ErrorCode::InvalidPrime);
  EXPECT_EQ(code_of([&] { gk_scan(11, 1, d); }), ErrorCode::SpecMismatch);
  EXPECT_EQ(code_of([&] { gk_scan(7, 1, uniform_on(GroupSpec::integers(), {1, 2})); }), ErrorCode::SpecMismatch);
}

TEST(Cs, RediscoversHegarty) {
  auto res = cs_search(-7, 7, 8);
  EXPECT_EQ(res.examined, 6435u);
  bool found = false;
  for (const auto& f : res.violations) {
    EXPECT_GT(f.margin, 0.0);
    if (f.set == std::vector<long>{-7, -5, -4, -3, 0, 4, 5, 7}) {
      found = true;
      EXPECT_NEAR(f.margin, 0.006, 5e-4);
    }
  }
  EXPECT_TRUE(found);
  for (std::size_t i = 1; i < res.violations.size(); ++i)
    EXPECT_GE(res.violations[i - 1].margin, res.violations[i].margin);
}

TEST(Cs, SmallWindowsHaveNoViolations) {
  EXPECT_TRUE(cs_search(-5, 5, 1).violations.empty());
  auto pairs = cs_search(0, 3, 2);
  EXPECT_EQ(pairs.examined, 6u);
  EXPECT_TRUE(pairs.violations.empty());
}

TEST(Cs, MarginMatchesOracle) {
  auto res = cs_search(-4, 4, 5);
  for (const auto& f : res.violations) {
    std::vector<long> neg;
    for (long v : f.set) neg.push_back(-v);
    auto add = [](const oracle::Key& a, const oracle::Key& b) { return oracle::Key{a[0] + b[0]}; };
    double hs = oracle::H(oracle::combine(oracle::uniform(f.set), oracle::uniform(f.set), add));
    double hd = oracle::H(oracle::combine(oracle::uniform(f.set), oracle::uniform(neg), add));
    EXPECT_NEAR(f.margin, hs - hd, kTol);
  }
}

TEST(Cs, Errors) {
  EXPECT_EQ(code_of([] { cs_search(-17, 0, 3); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { cs_search(0, 12, 11); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { cs_search(-16, 16, 8, 1000); }), ErrorCode::BudgetExceeded);
}

TEST(RealLine, Examples) {
  Carrier zr = RingSpec::integer_ring();
  std::vector<Dist> fam = {Dist::point_mass(zr, el({3})), uniform_on(zr, {1, 2}), uniform_on(zr, {1, 2, 4, 8}),
                           uniform_on(zr, {1, 2, 3, 4})};
  auto res = real_line_probe(fam);
  ASSERT_EQ(res.records.size(), 4u);
  EXPECT_FALSE(res.records[0].ratio.has_value());
  EXPECT_TRUE(has_flag(res.records[0], "h_zero"));
  EXPECT_NEAR(res.records[1].a, 2.5, kTol);
  EXPECT_NEAR(res.records[1].m, 2.5, kTol);
  EXPECT_NEAR(*res.records[1].ratio, 2.5, kTol);

  const auto& gp = res.records[2];
  const auto& ap = res.records[3];
  // The logarithm maps a geometric progression onto an arithmetic one.
  EXPECT_NEAR(gp.m, ap.a, kTol);
  EXPECT_GT(gp.m, gp.a);
  EXPECT_LT(gp.m, 3 * gp.h);
  EXPECT_NE(res.note.find("1/3"), std::string::npos);
}

TEST(RealLine, RunningMaxAndFamilies) {
  auto fam = real_line_family("random", 0, 3, 25);
  auto res = real_line_probe(fam);
  ASSERT_EQ(res.running_max.size(), res.records.size());
  std::optional<double> best;
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    if (res.records[i].ratio) best = best ? std::max(*best, *res.records[i].ratio) : *res.records[i].ratio;
    EXPECT_EQ(res.running_max[i], best);
  }
  EXPECT_EQ(res.max_ratio, best);
  EXPECT_EQ(real_line_family("arith", 5, 0, 0).size(), 5u);
  EXPECT_EQ(real_line_family("geom", 4, 0, 0).back(), uniform_on(RingSpec::integer_ring(), {1, 2, 4, 8}));
  EXPECT_EQ(code_of([] { real_line_family("cubic", 3, 0, 0); }), ErrorCode::InvalidConfig);
}

TEST(RealLine, RequiresIntegerRing) {
  std::vector<Dist> fam = {uniform_on(GroupSpec::integers(), {1, 2})};
  EXPECT_EQ(code_of([&] { real_line_probe(fam); }), ErrorCode::SpecMismatch);
}

TEST(Budget, EnvironmentOverride) {
  ::setenv("ENTROPIC_ENERGY_BUDGET", "1234", 1);
  EXPECT_EQ(default_budget(), 1234u);
  ::setenv("ENTROPIC_ENERGY_BUDGET", "lots", 1);
  EXPECT_EQ(code_of([] { default_budget(); }), ErrorCode::InvalidConfig);
  ::unsetenv("ENTROPIC_ENERGY_BUDGET");
  EXPECT_EQ(default_budget(), 10000000u);
}
