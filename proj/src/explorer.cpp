#include "entropic/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "entropic/random.hpp"

namespace entropic::explorer {

namespace {

// Entropy of the law P(v) = counts[v] / total, for integer counts.
template <typename Counts>
Bits entropy_of_counts(const Counts& counts, std::uint64_t total) {
  double acc = 0;
  for (std::uint64_t c : counts) {
    if (c > 1) acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
  }
  return std::log2(static_cast<double>(total)) - acc / static_cast<double>(total);
}

std::string braces(const std::vector<long>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

bool is_uniform(const Dist& d) {
  const Rational& first = d.probs().begin()->second;
  return std::all_of(d.probs().begin(), d.probs().end(), [&](const auto& kv) { return kv.second == first; });
}

std::string describe(const Dist& d) {
  std::string s = "{";
  bool first = true;
  for (const Element& e : d.support()) {
    s += (first ? "" : ",") + e.to_string();
    first = false;
  }
  s += "}";
  if (!is_uniform(d)) s += "@" + digest(to_json(d));
  return s;
}

// Visits every size-k subset of {lo, ..., hi} in lexicographic order.
void for_each_subset(long lo, long hi, std::size_t k, const std::function<void(const std::vector<long>&)>& visit) {
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long next) {
    if (cur.size() == k) {
      visit(cur);
      return;
    }
    const long need = static_cast<long>(k - cur.size());
    for (long v = next; v <= hi - need + 1; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(lo);
}

// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  if (r >= static_cast<long double>(UINT64_MAX)) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::llround(r));
}

void require_prime(long p, ErrorCode code) {
  if (p < 3 || !is_prime(BigInt(p))) throw Error(code, std::to_string(p) + " is not an odd prime");
}

}  // namespace

Report& Report::bits(std::string key, Bits v) {
  entries.push_back({std::move(key), Entry::Kind::Bits, v, false, {}});
  return *this;
}

Report& Report::number(std::string key, double v) {
  entries.push_back({std::move(key), Entry::Kind::Number, v, false, {}});
  return *this;
}

Report& Report::flag(std::string key, bool v) {
  entries.push_back({std::move(key), Entry::Kind::Flag, 0, v, {}});
  return *this;
}

Report& Report::text(std::string key, std::string v) {
  entries.push_back({std::move(key), Entry::Kind::Text, 0, false, std::move(v)});
  return *this;
}

std::uint64_t default_budget() {
  const char* env = std::getenv("ENTROPIC_ENERGY_BUDGET");
  if (env == nullptr || *env == '\0') return 10'000'000;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    throw Error(ErrorCode::InvalidConfig, std::string("ENTROPIC_ENERGY_BUDGET='") + env + "' is not a positive integer");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Worked examples

Report HegartyReport::to_report() const {
  Report r;
  r.title = "hegarty";
  r.text("set", braces(set))
      .bits("H{X}", h_x)
      .bits("H{Y}", h_y)
      .bits("H{X+Y}", h_sum)
      .bits("H{X+X'}", h_double)
      .bits("A{X,Y}", a_xy)
      .bits("A{X}", a_x)
      .bits("A{Y}", a_y)
      .bits("margin", margin)
      .flag("violation", violation);
  return r;
}

HegartyReport reproduce_hegarty(double tol) {
  HegartyReport r;
  r.set = {-7, -5, -4, -3, 0, 4, 5, 7};
  const Carrier z = GroupSpec::integers();
  std::vector<Element> a;
  std::vector<Element> neg;
  for (long v : r.set) {
    a.push_back(Element::scalar(v));
    neg.push_back(Element::scalar(-v));
  }
  const Dist x = uniform_on(z, a);
  const Dist y = uniform_on(z, neg);
  const Joint xy = independent_join(Joint(x), Joint(y));
  r.h_x = entropy(x);
  r.h_y = entropy(y);
  r.h_sum = entropy(pushforward(xy, words::sum01()));
  r.h_double = entropy(combine_independent(x, x, words::sum01()));
  r.a_xy = additive_energy(xy, tol).value;
  r.a_x = self_energy(x, tol).value;
  r.a_y = self_energy(y, tol).value;
  r.margin = r.a_xy - 0.5 * (r.a_x + r.a_y);
  r.violation = r.margin > tol;
  return r;
}

Report Sidon012Report::to_report() const {
  Report r;
  r.title = "sidon012";
  r.bits("H{X}", h_x)
      .bits("H{X+X'}", h_double)
      .bits("s{X}", doubling)
      .bits("H{X}-1", h_x - 1)
      .bits("sidon_slack", sidon_slack)
      .flag("sidon_random_variable", sidon_rv)
      .flag("sidon_set", sidon_set);
  return r;
}

Sidon012Report reproduce_sidon012(double tol) {
  const Carrier z = GroupSpec::integers();
  const Dist x = uniform_on(z, {0, 1, 2});
  Sidon012Report r;
  r.h_x = entropy(x);
  r.h_double = entropy(combine_independent(x, x, words::sum01()));
  r.doubling = doubling(x);
  const SidonVerdict v = is_sidon_rv(x, tol);
  r.sidon_slack = v.slack;
  r.sidon_rv = v.sidon;
  r.sidon_set = is_sidon_set(z, x.support());
  return r;
}

Report SubfieldReport::to_report() const {
  Report r;
  r.title = "subfield";
  r.number("q", static_cast<double>(q))
      .bits("H{X}", h_x)
      .bits("H{X+X'}", h_double)
      .bits("H{X+X'} closed form", h_double_closed_form)
      .bits("H{X+X'} leading terms", h_double_leading)
      .bits("M{X}", m_x)
      .bits("3H{X}", 3 * h_x)
      .bits("A{X}", a_x)
      .bits("A{X} leading terms", a_x_leading)
      .flag("matches_closed_form", matches_closed_form);
  return r;
}

SubfieldReport subfield_example(long q, double tol) {
  require_prime(q, ErrorCode::NonPrimeQ);
  const Carrier f = RingSpec::fp(q);
  std::vector<Element> units;
  for (long v = 1; v < q; ++v) units.push_back(Element::scalar(v));
  const Dist x = uniform_on(f, units);
  SubfieldReport r;
  r.q = q;
  r.h_x = entropy(x);
  r.h_double = entropy(combine_independent(x, x, words::sum01()));
  const double n = static_cast<double>(q - 1);
  const double m = static_cast<double>(q - 2);
  r.h_double_closed_form = std::log2(n) / n + n * (m / (n * n)) * std::log2(n * n / m);
  r.h_double_leading = 2 * std::log2(n) - std::log2(m);
  // X and X' are independent, so H{X,X'} = 2H{X}.
  r.m_x = 4 * r.h_x - entropy(combine_independent(x, x, words::product01()));
  r.a_x = 4 * r.h_x - r.h_double;
  r.a_x_leading = 2 * std::log2(n) + std::log2(m);
  r.matches_closed_form = std::abs(r.h_double - r.h_double_closed_form) <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Scans

std::optional<double> ScanRecord::epsilon() const {
  if (!ratio) return std::nullopt;
  return 3 - *ratio;
}

Json ScanRecord::to_json() const {
  Json j = {{"descriptor", descriptor}, {"H", h}, {"A", a}, {"M", m}, {"flags", flags}};
  j["ratio"] = ratio ? Json(*ratio) : Json(nullptr);
  j["epsilon"] = ratio ? Json(3 - *ratio) : Json(nullptr);
  return j;
}

std::string records_to_csv(std::span<const ScanRecord> records) {
  std::ostringstream out;
  out.precision(12);
  out << "descriptor,H,A,M,ratio,flags\n";
  for (const ScanRecord& r : records) {
    out << '"' << r.descriptor << "\"," << r.h << ',' << r.a << ',' << r.m << ',';
    if (r.ratio) out << *r.ratio;
    out << ',';
    for (std::size_t i = 0; i < r.flags.size(); ++i) out << (i ? ";" : "") << r.flags[i];
    out << '\n';
  }
  return out.str();
}

namespace {

ScanRecord make_record(std::string descriptor, Bits h, Bits a, Bits m, double tol) {
  ScanRecord r{std::move(descriptor), h, a, m, std::nullopt, {}};
  if (h > tol) {
    r.ratio = std::max(a, m) / h;
  } else {
    r.flags.push_back("h_zero");
  }
  return r;
}

void sort_records(std::vector<ScanRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ScanRecord& x, const ScanRecord& y) {
    const auto ex = x.epsilon();
    const auto ey = y.epsilon();
    if (ex.has_value() != ey.has_value()) return ex.has_value();
    if (ex && *ex != *ey) return *ex < *ey;
    return x.descriptor < y.descriptor;
  });
}

}  // namespace

Report SumproductResult::summary() const {
  Report r;
  r.title = "sumproduct";
  r.number("records", static_cast<double>(records.size()))
      .number("delta", delta)
      .number("in_window", static_cast<double>(in_window));
  if (min_epsilon_in_window) {
    r.number("min_epsilon_in_window", *min_epsilon_in_window);
  } else {
    r.text("min_epsilon_in_window", "undefined");
  }
  return r;
}

SumproductResult sumproduct_scan(const SumproductConfig& cfg) {
  const bool exhaustive = cfg.mode == SumproductConfig::Mode::Exhaustive;
  require_prime(cfg.p, ErrorCode::InvalidPrime);
  if (exhaustive && cfg.p > kExhaustivePrimeCap) {
    throw Error(ErrorCode::InvalidPrime, "exhaustive mode supports p <= " + std::to_string(kExhaustivePrimeCap) +
                                             ", got " + std::to_string(cfg.p) + "; use random mode");
  }
  if (cfg.max_support == 0 || cfg.max_support > static_cast<std::size_t>(cfg.p - 1)) {
    throw Error(ErrorCode::SupportTooLarge,
                "max support " + std::to_string(cfg.max_support) + " outside 1.." + std::to_string(cfg.p - 1));
  }
  if (!exhaustive && cfg.trials == 0) throw Error(ErrorCode::InvalidConfig, "random mode needs trials >= 1");

  const long p = cfg.p;
  const double log_p = std::log2(static_cast<double>(p));
  SumproductResult out;
  out.delta = cfg.delta;

  auto finish = [&](ScanRecord rec, bool subgroup) {
    if (subgroup) rec.flags.push_back("subgroup");
    if (rec.h >= cfg.delta * log_p - cfg.tol && rec.h <= (1 - cfg.delta) * log_p + cfg.tol) {
      rec.flags.push_back("in_window");
      ++out.in_window;
      if (auto e = rec.epsilon()) {
        out.min_epsilon_in_window = out.min_epsilon_in_window ? std::min(*out.min_epsilon_in_window, *e) : *e;
      }
    }
    out.records.push_back(std::move(rec));
  };

  if (exhaustive) {
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= cfg.max_support; ++k) total += choose(static_cast<std::uint64_t>(p - 1), k);
    const std::uint64_t budget = default_budget();
    if (total > budget) {
      throw Error(ErrorCode::SupportTooLarge,
                  std::to_string(total) + " subsets exceed the budget of " + std::to_string(budget));
    }
    std::vector<std::uint64_t> sums(static_cast<std::size_t>(p));
    std::vector<std::uint64_t> prods(static_cast<std::size_t>(p));
    std::vector<char> member(static_cast<std::size_t>(p));
    for (std::size_t k = 1; k <= cfg.max_support; ++k) {
      for_each_subset(1, p - 1, k, [&](const std::vector<long>& s) {
        std::fill(sums.begin(), sums.end(), 0);
        std::fill(prods.begin(), prods.end(), 0);
        std::fill(member.begin(), member.end(), 0);
        for (long v : s) member[static_cast<std::size_t>(v)] = 1;
        bool closed = true;
        for (long a : s) {
          for (long b : s) {
            ++sums[static_cast<std::size_t>((a + b) % p)];
            const long ab = (a * b) % p;
            ++prods[static_cast<std::size_t>(ab)];
            closed = closed && member[static_cast<std::size_t>(ab)];
          }
        }
        const std::uint64_t n2 = static_cast<std::uint64_t>(k * k);
        const Bits h = std::log2(static_cast<double>(k));
        const Bits a = 4 * h - entropy_of_counts(sums, n2);
        const Bits m = 4 * h - entropy_of_counts(prods, n2);
        finish(make_record(braces(s), h, a, m, cfg.tol), closed);
      });
    }
  } else {
    const Carrier f = RingSpec::fp(p);
    gen::SizeCaps caps;
    caps.max_support = cfg.max_support;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      gen::Rng rng(gen::mix_seed(cfg.seed, 0x5eed5ca9ULL, t));
      const std::size_t size = 1 + rng.below(cfg.max_support);
      const auto support = gen::random_set(rng, f, size, caps, true);
      const Dist d = gen::random_dist_on(rng, f, support, caps.max_den);
      const Bits h = entropy(d);
      const Bits a = 4 * h - entropy(combine_independent(d, d, words::sum01()));
      const Bits m = 4 * h - entropy(combine_independent(d, d, words::product01()));
      std::set<Element> sup(support.begin(), support.end());
      bool closed = is_uniform(d);
      for (const Element& u : support) {
        for (const Element& v : support) closed = closed && sup.count(f.mul(u, v)) != 0;
      }
      finish(make_record(describe(d), h, a, m, cfg.tol), closed);
    }
  }
  sort_records(out.records);
  return out;
}

Report GkReport::to_report() const {
  Report r;
  r.title = "gk";
  r.number("p", static_cast<double>(p)).number("k", static_cast<double>(k)).bits("H{X}", h_x);
  for (std::size_t j = 0; j < lhs_by_k.size(); ++j) r.bits("lhs[k=" + std::to_string(j + 1) + "]", lhs_by_k[j]);
  r.bits("lhs", lhs).bits("rhs", rhs).bits("slack", slack);
  return r;
}

GkReport gk_scan(long p, std::size_t k, const Dist& d, std::uint64_t budget) {
  require_prime(p, ErrorCode::InvalidPrime);
  if (k == 0) throw Error(ErrorCode::InvalidConfig, "k must be at least 1");
  if (d.carrier() != Carrier(RingSpec::fp(p))) {
    throw Error(ErrorCode::SpecMismatch, "expected a distribution over F_" + std::to_string(p) + ", got " +
                                             d.carrier().to_string());
  }
  long double work = 1;
  for (std::size_t i = 0; i < 2 * k; ++i) work *= static_cast<long double>(d.support_size());
  if (work > static_cast<long double>(budget)) {
    throw Error(ErrorCode::BudgetExceeded,
                "support^(2k) = " + std::to_string(static_cast<double>(work)) + " exceeds " + std::to_string(budget));
  }
  GkReport r;
  r.p = p;
  r.k = k;
  r.h_x = entropy(d);
  const Dist prod = combine_independent(d, d, words::product01());
  Dist acc = prod;
  r.lhs_by_k.push_back(entropy(acc));
  for (std::size_t j = 2; j <= k; ++j) {
    acc = combine_independent(acc, prod, words::sum01());
    r.lhs_by_k.push_back(entropy(acc));
  }
  r.lhs = r.lhs_by_k.back();
  r.rhs = std::min(2 * r.h_x, std::log2(static_cast<double>(p))) - 1;
  r.slack = r.lhs - r.rhs;
  return r;
}

Json CsFinding::to_json() const {
  return {{"set", set}, {"H{X+X'}", h_sum}, {"H{X-X'}", h_diff}, {"margin", margin}};
}

Report CsSearchResult::summary() const {
  Report r;
  r.title = "cs";
  r.number("examined", static_cast<double>(examined)).number("violations", static_cast<double>(violations.size()));
  if (!violations.empty()) r.text("best", braces(violations.front().set)).bits("best_margin", violations.front().margin);
  return r;
}

CsSearchResult cs_search(long lo, long hi, std::size_t size, std::uint64_t budget, double tol) {
  if (lo < -16 || hi > 16 || lo > hi) {
    throw Error(ErrorCode::InvalidConfig, "window [" + std::to_string(lo) + "," + std::to_string(hi) +
                                              "] must lie inside [-16,16]");
  }
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  if (size == 0 || size > 10 || size > width) {
    throw Error(ErrorCode::InvalidConfig, "set size " + std::to_string(size) + " outside 1..min(10, window)");
  }
  const std::uint64_t count = choose(width, size);
  if (count > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(count) + " sets exceed the budget of " + std::to_string(budget));
  }
  CsSearchResult out;
  const std::size_t span = 2 * width;
  std::vector<std::uint64_t> sums(span);
  std::vector<std::uint64_t> diffs(span);
  const std::uint64_t n2 = static_cast<std::uint64_t>(size * size);
  for_each_subset(lo, hi, size, [&](const std::vector<long>& s) {
    ++out.examined;
    std::fill(sums.begin(), sums.end(), 0);
    std::fill(diffs.begin(), diffs.end(), 0);
    for (long a : s) {
      for (long b : s) {
        ++sums[static_cast<std::size_t>(a + b - 2 * lo)];
        ++diffs[static_cast<std::size_t>(a - b + static_cast<long>(width) - 1)];
      }
    }
    CsFinding f;
    f.h_sum = entropy_of_counts(sums, n2);
    f.h_diff = entropy_of_counts(diffs, n2);
    // With H{X} = H{Y} = log|A|: A{X,Y} = 4log|A| - H{X-X'} and A{X} = A{Y} = 4log|A| - H{X+X'}.
    f.margin = f.h_sum - f.h_diff;
    if (f.margin > tol) {
      f.set = s;
      out.violations.push_back(std::move(f));
    }
  });
  std::stable_sort(out.violations.begin(), out.violations.end(), [](const CsFinding& x, const CsFinding& y) {
    if (x.margin != y.margin) return x.margin > y.margin;
    return x.set < y.set;
  });
  return out;
}

std::vector<Dist> real_line_family(const std::string& family, std::size_t max_size, std::uint64_t seed,
                                   std::size_t trials) {
  const Carrier z = RingSpec::integer_ring();
  std::vector<Dist> out;
  if (family == "arith" || family == "geom") {
    if (family == "geom" && max_size > 40) throw Error(ErrorCode::InvalidConfig, "geom family needs max size <= 40");
    for (std::size_t n = 1; n <= max_size; ++n) {
      std::vector<Element> s;
      for (std::size_t i = 0; i < n; ++i) {
        s.push_back(Element::scalar(family == "arith" ? static_cast<long>(i + 1) : (1L << i)));
      }
      out.push_back(uniform_on(z, s));
    }
    return out;
  }
  if (family == "random") {
    gen::SizeCaps caps;
    caps.coord_lo = 1;
    caps.coord_hi = 16;
    caps.max_support = std::max<std::size_t>(1, max_size);
    for (std::size_t t = 0; t < trials; ++t) {
      gen::Rng rng(gen::mix_seed(seed, 0x4ea11e, t));
      out.push_back(gen::random_dist(rng, z, caps));
    }
    return out;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown family '" + family + "' (arith, geom, random)");
}

Report RealLineResult::summary() const {
  Report r;
  r.title = "real";
  r.text("note", note).number("records", static_cast<double>(records.size()));
  if (max_ratio) {
    r.number("max_ratio", *max_ratio);
  } else {
    r.text("max_ratio", "undefined");
  }
  return r;
}

RealLineResult real_line_probe(std::span<const Dist> family, std::uint64_t budget) {
  const Carrier z = RingSpec::integer_ring();
  long double work = 0;
  for (const Dist& d : family) {
    if (d.carrier() != z) {
      throw Error(ErrorCode::SpecMismatch, "real-line probe needs IntegerRing, got " + d.carrier().to_string());
    }
    work += static_cast<long double>(d.support_size()) * static_cast<long double>(d.support_size());
  }
  if (work > static_cast<long double>(budget)) {
    throw Error(ErrorCode::BudgetExceeded, "probe work exceeds the budget of " + std::to_string(budget));
  }
  RealLineResult out;
  out.note = "conjectured: max(A{X},M{X})/H{X} <= 3 - eps + o(1) for some eps > 0, where necessarily eps <= 1/3";
  for (const Dist& d : family) {
    const Bits h = entropy(d);
    const Bits a = 4 * h - entropy(combine_independent(d, d, words::sum01()));
    const Bits m = 4 * h - entropy(combine_independent(d, d, words::product01()));
    ScanRecord rec = make_record(describe(d), h, a, m, kDefaultTolerance);
    if (rec.ratio) out.max_ratio = out.max_ratio ? std::max(*out.max_ratio, *rec.ratio) : *rec.ratio;
    out.running_max.push_back(out.max_ratio);
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace entropic::explorer
