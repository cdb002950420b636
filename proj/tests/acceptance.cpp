// Acceptance checks AC1-AC8. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entropic/cli.hpp"
#include "entropic/explorer.hpp"
#include "entropic/laws.hpp"
#include "entropic/random.hpp"

using namespace entropic;

namespace {

constexpr double kTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome ac1() {
  Outcome o;
  auto h = explorer::reproduce_hegarty();
  o.require(std::abs(h.h_x - 3) <= kTol && std::abs(h.h_y - 3) <= kTol, "H{X} = H{Y} = 3");
  o.require(std::abs(h.h_sum - 4.507) <= 1e-3, "H{X+Y} = " + fmt("%.6f", h.h_sum));
  o.require(std::abs(h.h_double - 4.513) <= 1e-3, "H{X+X'} = " + fmt("%.6f", h.h_double));
  o.require(std::abs(h.a_xy - 7.493) <= 1e-3, "A{X,Y} = " + fmt("%.6f", h.a_xy));
  o.require(std::abs(h.a_x - 7.487) <= 1e-3, "A{X} = " + fmt("%.6f", h.a_x));
  o.require(h.a_xy > 0.5 * h.a_x + 0.5 * h.a_y, "A{X,Y} > A{X}/2 + A{Y}/2");
  if (o.pass) o.detail = "margin " + fmt("%.6f", h.margin) + " bits";
  return o;
}

Outcome ac2() {
  Outcome o;
  auto s = explorer::reproduce_sidon012();
  const double h_minus_1 = s.h_x - 1;
  o.require(s.sidon_rv && s.doubling >= h_minus_1, "Sidon random variable");
  o.require(std::abs(s.doubling - 0.61220) <= 5e-6, "s{X} = " + fmt("%.6f", s.doubling));
  o.require(std::abs(h_minus_1 - 0.58496) <= 5e-6, "H{X} - 1 = " + fmt("%.6f", h_minus_1));
  o.require(!s.sidon_set, "{0,1,2} is not a Sidon set");
  const double nats = bits_to_nats(s.doubling);
  o.require(std::abs(nats - 0.4244) <= 5e-4, "s{X} in nats = " + fmt("%.6f", nats));
  auto r = cli({"--base", "nats", "reproduce", "sidon012"});
  o.require(r.status == cli::kExitOk, "reproduce sidon012 --base nats exit " + std::to_string(r.status));
  if (o.pass) o.detail = "s = " + fmt("%.5f", s.doubling) + " bits = " + fmt("%.4f", nats) + " nats";
  return o;
}

Outcome ac3() {
  Outcome o;
  int primes = 0;
  double worst = 0;
  for (long q = 3; q <= 101; ++q) {
    if (!is_prime(BigInt(q))) continue;
    ++primes;
    auto r = explorer::subfield_example(q);
    const double n = static_cast<double>(q - 1);
    const double closed =
        std::log2(n) / n + n * (static_cast<double>(q - 2) / (n * n)) * std::log2(n * n / static_cast<double>(q - 2));
    const double dev = std::abs(r.h_double - closed);
    worst = std::max(worst, dev);
    o.require(dev <= kTol, "closed form at q = " + std::to_string(q));
    o.require(std::abs(r.m_x - 3 * std::log2(n)) <= kTol, "M{X} at q = " + std::to_string(q));
  }
  if (o.pass) o.detail = std::to_string(primes) + " primes, max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ac4() {
  Outcome o;
  const double inf = std::numeric_limits<double>::infinity();
  const gen::SizeCaps caps{10, -16, 16, 64};
  double worst_add = 0, worst_mul = 0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    gen::Rng rng(gen::mix_seed(4, 1, t));
    Carrier c = gen::random_group(rng);
    Joint j = gen::random_joint(rng, c, 2, caps);
    auto r = additive_energy(j, inf);
    const double dev = std::abs(r.via_formula - r.via_construction);
    worst_add = std::max(worst_add, dev);
    o.require(dev <= kTol, "additive trial " + std::to_string(t));
  }
  for (std::uint64_t t = 0; t < 200; ++t) {
    gen::Rng rng(gen::mix_seed(4, 2, t));
    Carrier c = gen::random_ring(rng);
    Joint j = gen::random_joint(rng, c, 2, caps);
    auto r = mult_energy(j, inf);
    const double dev = std::abs(r.via_formula - r.via_construction);
    worst_mul = std::max(worst_mul, dev);
    o.require(dev <= kTol, "multiplicative trial " + std::to_string(t));
  }
  if (o.pass) o.detail = "max deviation " + fmt("%.2e", worst_add) + " (A), " + fmt("%.2e", worst_mul) + " (M)";
  return o;
}

Outcome ac5() {
  Outcome o;
  auto r = cli({"verify", "--suite", "all", "--trials", "200", "--seed", "0"});
  o.require(r.status == cli::kExitOk, "verify exit " + std::to_string(r.status) + " " + r.err);
  if (!o.pass) return o;
  auto j = nlohmann::json::parse(r.out);
  const std::set<std::string> required = {"SUBADD",  "COND_REDUCES",  "CHAIN",         "SUBMOD",    "MAXPROB",
                                          "DETERMINES", "INDEP_SUMDIFF", "CIT_IDENTITY", "ENERGY_BOUNDS",
                                          "LARGE_CHAIN", "NAIVE_FWD",   "SMALL_FWD",     "LEM_A2",    "BSG",
                                          "SYMM",       "ASYMM",         "DOUBLING_EQUIV", "SIDON_SET",
                                          "SIDON_COND", "KT",            "PR"};
  std::set<std::string> seen;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& l : j["laws"]) {
    const std::string id = l["id"].get<std::string>();
    if (!required.count(id)) continue;
    seen.insert(id);
    const double slack = l["minSlack"].get<double>();
    worst = std::min(worst, slack);
    o.require(l["failures"].get<long>() == 0, id + " has failures");
    o.require(slack >= -kTol, id + " min slack " + fmt("%.3e", slack));
    o.require(l["trials"].get<long>() >= 200, id + " ran fewer than 200 trials");
  }
  o.require(seen == required, "missing laws in report");
  if (o.pass) o.detail = std::to_string(seen.size()) + " theorem laws, min slack " + fmt("%.3e", worst);
  return o;
}

Outcome ac6() {
  Outcome o;
  Dist u = uniform_on(GroupSpec::integers_mod(4), {0, 1, 2, 3});
  auto b = laws::bsg_report(independent_join(u, u));
  o.require(std::abs(b.log_c) <= kTol, "log C = " + fmt("%.3e", b.log_c));
  o.require(std::abs(b.slack_x1) <= kTol, "H{X1|S} bound slack " + fmt("%.3e", b.slack_x1));
  o.require(std::abs(b.slack_y2) <= kTol, "H{Y2|S} bound slack " + fmt("%.3e", b.slack_y2));
  o.require(std::abs(b.slack_sum) <= kTol, "H{X1+Y2|S} bound slack " + fmt("%.3e", b.slack_sum));
  o.require(b.pass, "report pass flag");
  if (o.pass) o.detail = "all three bounds tight";
  return o;
}

Outcome ac7() {
  Outcome o;
  auto r = cli({"--format", "json", "scan", "cs", "--lo", "-7", "--hi", "7", "--size", "8"});
  o.require(r.status == cli::kExitOk, "scan cs exit " + std::to_string(r.status) + " " + r.err);
  if (!o.pass) return o;
  auto j = nlohmann::json::parse(r.out);
  const std::vector<long> hegarty = {-7, -5, -4, -3, 0, 4, 5, 7};
  bool found = false;
  for (const auto& v : j["violations"]) found = found || v["set"].get<std::vector<long>>() == hegarty;
  o.require(found, "Hegarty set not among violations");
  if (o.pass)
    o.detail = std::to_string(j["violations"].size()) + " violating sets of " +
               std::to_string(j["values"]["examined"].get<long>());
  return o;
}

Outcome ac8() {
  Outcome o;
  const std::vector<std::string> args = {"scan", "sumproduct", "--p", "11", "--seed", "1"};
  auto a = cli(args);
  auto b = cli(args);
  o.require(a.status == cli::kExitOk && b.status == cli::kExitOk, "scan exit status");
  o.require(!a.out.empty() && a.out == b.out, "CSV output differs between runs");
  auto j = cli({"--format", "json", "scan", "sumproduct", "--p", "11", "--seed", "1"});
  o.require(j.status == cli::kExitOk, "json scan exit status");
  if (!o.pass) return o;
  auto doc = nlohmann::json::parse(j.out);
  int subgroups = 0;
  double worst = 0;
  for (const auto& rec : doc["records"]) {
    bool subgroup = false;
    for (const auto& f : rec["flags"]) subgroup = subgroup || f == "subgroup";
    if (!subgroup) continue;
    ++subgroups;
    const double dev = std::abs(rec["M"].get<double>() - 3 * rec["H"].get<double>());
    worst = std::max(worst, dev);
    o.require(dev <= kTol, "M != 3H on " + rec["descriptor"].get<std::string>());
  }
  o.require(subgroups > 0, "no subgroup records");
  if (o.pass)
    o.detail = "identical CSV, " + std::to_string(subgroups) + " subgroup records, max |M-3H| " + fmt("%.2e", worst);
  return o;
}

struct Criterion {
  const char* id;
  const char* title;
  /// Runtime limit; 0 when the criterion states none.
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "Hegarty reproduction", 1, ac1},
      {"AC2", "Sidon {0,1,2} example", 1, ac2},
      {"AC3", "subfield closed form, primes 3..101", 10, ac3},
      {"AC4", "energy construction vs formula", 120, ac4},
      {"AC5", "law suite, 200 trials, seed 0", 300, ac5},
      {"AC6", "BSG on uniforms over Z/4", 0, ac6},
      {"AC7", "counterexample search rediscovers Hegarty", 600, ac7},
      {"AC8", "deterministic sum-product scan", 0, ac8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail = "took " + fmt("%.2f", secs) + " s, budget " + fmt("%.0f", c.budget_seconds) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s (%.3f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
