#include "entropic/laws.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>

namespace entropic::laws {

namespace {

constexpr std::array<LawInfo, 27> kRegistry = {{
    {LawId::SUBADD, "SUBADD", "H{X,Y} <= H{X} + H{Y}", "joints[0]: (X, Y)", true, false},
    {LawId::COND_REDUCES, "COND_REDUCES", "H{X|Y} <= H{X}", "joints[0]: (X, Y)", true, false},
    {LawId::CHAIN, "CHAIN", "H{X_1,...,X_n} = sum_i H{X_i | X_1,...,X_{i-1}}", "joints[0]: (X_1, ..., X_n)", true,
     true},
    {LawId::SUBMOD, "SUBMOD",
     "H{X} + H{Y} <= H{Z} + H{W} when (Z,W) determines X and each of Z, W determines Y",
     "joints[0]: base tuple; views[0..3]: X, Y, Z, W as words over the base", true, false},
    {LawId::MAXPROB, "MAXPROB", "-log max_a P{X=a} <= H{X}", "dists[0]: X", true, false},
    {LawId::DETERMINES, "DETERMINES", "H{f(X)} <= H{X}", "joints[0]: base tuple; views[0]: X; views[1]: f(X)", true,
     false},
    {LawId::INDEP_SUMDIFF, "INDEP_SUMDIFF", "max(H{X}, H{Y}) <= min(H{X+Y}, H{X-Y}) for independent X, Y",
     "dists[0]: X; dists[1]: Y", true, false},
    {LawId::CIT_IDENTITY, "CIT_IDENTITY",
     "H{X_1, X_2} = 2H{X} - H{f(X)} for trials of X conditionally independent relative to f(X)",
     "joints[0]: X; statistic: f", true, true},
    {LawId::ENERGY_BOUNDS, "ENERGY_BOUNDS", "log(|A|^2 |B|^2 / |A+B|) <= A{U_A, U_B} <= log E(A, B)",
     "dists[0]: uniform on A; dists[1]: uniform on B", true, false},
    {LawId::LARGE_CHAIN, "LARGE_CHAIN", "H{X,Y} <= A{X,Y} <= H{X,Y} + min(H{X}, H{Y})", "joints[0]: (X, Y)", true,
     false},
    {LawId::NAIVE_FWD, "NAIVE_FWD",
     "H{X+Y} <= H{X}/2 + H{Y}/2 + log C when A{X,Y} >= 3H{X}/2 + 3H{Y}/2 - log C", "joints[0]: (X, Y)", true,
     false},
    {LawId::NAIVE_BWD, "NAIVE_BWD",
     "3H{X}/2 + 3H{Y}/2 - log C - 2C' <= A{X,Y} when H{X+Y} <= H{X}/2 + H{Y}/2 + log C and "
     "H{X,Y} >= H{X} + H{Y} - C'",
     "joints[0]: (X, Y)", true, false},
    {LawId::SMALL_FWD, "SMALL_FWD", "A{X,Y} <= H{X} + H{Y} + log C when H{X+Y} >= H{X} + H{Y} - log C",
     "joints[0]: (X, Y)", true, false},
    {LawId::SMALL_BWD, "SMALL_BWD",
     "H{X} + H{Y} - log C - 2C' <= H{X+Y} when A{X,Y} <= H{X} + H{Y} + log C and H{X,Y} >= H{X} + H{Y} - C'",
     "joints[0]: (X, Y)", true, false},
    {LawId::LEM_A2, "LEM_A2",
     "max(H{X1-X2}, H{X1-Y2}) <= 2H{X} + 2H{Y} - A{X,Y} for trials conditionally independent relative to X+Y",
     "joints[0]: (X, Y)", true, false},
    {LawId::BSG, "BSG",
     "H{X1|X+Y} >= H{X} - 2log C, H{Y2|X+Y} >= H{Y} - 2log C and H{X1+Y2|X+Y} <= H{X}/2 + H{Y}/2 + log C "
     "when A{X,Y} >= 3H{X}/2 + 3H{Y}/2 - log C",
     "joints[0]: (X, Y)", true, false},
    {LawId::SYMM, "SYMM", "|H{X} - H{Y}| <= 2log C when A{X,Y} >= 3H{X}/2 + 3H{Y}/2 - log C", "joints[0]: (X, Y)",
     true, false},
    {LawId::ASYMM, "ASYMM", "H{X+Y} - H{Y} <= log C when A{X,Y} >= 2H{X} + H{Y} - log C", "joints[0]: (X, Y)",
     true, false},
    {LawId::DOUBLING_EQUIV, "DOUBLING_EQUIV", "A{X} = 3H{X} - s{X}", "dists[0]: X", true, true},
    {LawId::UA_DOUBLING, "UA_DOUBLING", "3log|A| - log E(A,A) <= s{U_A}", "dists[0]: uniform on A", true, false},
    {LawId::SIDON_SET, "SIDON_SET", "H{X} - 1 <= s{X} for X supported on a Sidon set",
     "dists[0]: X with Sidon support", true, false},
    {LawId::SIDON_COND, "SIDON_COND",
     "H{X|Z} <= (H{X1+X2} + 1)/2 when X given Z is Sidon, X1 and X2 trials conditionally independent relative to Z",
     "joints[0]: (X, Z)", true, false},
    {LawId::KT, "KT",
     "H{XY+ZW} + H{X} + H{Y} + 2H{Z} + 2H{W} <= H{X+Y} + H{Z-W} + H{XZ} + 2H{YZ} + 2H{ZW} "
     "for independent nonzero X, Y, Z, W",
     "dists[0..3]: X, Y, Z, W over a ring", true, false},
    {LawId::KT_SECOND, "KT_SECOND",
     "H{XY+ZW} <= H{X} + 8log C for i.i.d. nonzero X, Y, Z, W with min(A{X}, M{X}) >= 3H{X} - log C",
     "dists[0]: X over a ring", true, false},
    {LawId::PR, "PR", "H{W+W_1+...+W_m} <= H{W} + sum_i log C_i with log C_i = H{W+W_i} - H{W}",
     "dists[0]: W; dists[1..m]: W_i", true, false},
    {LawId::CS_PROBE, "CS_PROBE", "A{X,Y} <= A{X}/2 + A{Y}/2 for independent X, Y (false in general)",
     "dists[0]: X; dists[1]: Y", false, false},
    {LawId::SMALL_FWD_AS_PROVED, "SMALL_FWD_AS_PROVED",
     "A{X,Y} <= H{X} + H{Y} - log C when H{X+Y} >= H{X} + H{Y} - log C (false in general)", "joints[0]: (X, Y)",
     false, false},
}};

[[noreturn]] void mismatch(LawId id, const std::string& why) {
  throw Error(ErrorCode::SignatureMismatch, std::string(name(id)) + ": " + why);
}

const Joint& need_joint(LawId id, const LawInputs& in, std::size_t arity) {
  if (in.joints.empty()) mismatch(id, "expected joints[0]");
  const Joint& j = in.joints[0];
  if (arity != 0 && j.arity() != arity) {
    mismatch(id, "expected a joint of arity " + std::to_string(arity) + ", got " + std::to_string(j.arity()));
  }
  return j;
}

const Dist& need_dist(LawId id, const LawInputs& in, std::size_t i) {
  if (in.dists.size() <= i) mismatch(id, "expected dists[" + std::to_string(i) + "]");
  return in.dists[i];
}

void need_same_carrier(LawId id, const Dist& a, const Dist& b) {
  if (a.carrier() != b.carrier()) mismatch(id, a.carrier().to_string() + " vs " + b.carrier().to_string());
}

void need_ring_nonzero(LawId id, const Dist& d) {
  if (!d.carrier().is_ring()) mismatch(id, "needs a ring carrier, got " + d.carrier().to_string());
  if (d.probs().count(d.carrier().zero()) != 0) mismatch(id, "support must avoid 0");
}

bool is_uniform(const Dist& d) {
  const Rational& first = d.probs().begin()->second;
  return std::all_of(d.probs().begin(), d.probs().end(), [&](const auto& kv) { return kv.second == first; });
}

SlackReport one_sided(LawId id, Bits lhs, Bits rhs, double tol, std::string detail = {}) {
  SlackReport r{id, lhs, rhs, rhs - lhs, false, std::move(detail), {}};
  r.pass = r.slack >= -tol;
  return r;
}

SlackReport identity(LawId id, Bits lhs, Bits rhs, double tol) {
  SlackReport r{id, lhs, rhs, rhs - lhs, false, {}, {}};
  r.pass = std::abs(r.slack) <= tol;
  return r;
}

// lower <= value <= upper; the report carries whichever side binds.
SlackReport two_sided(LawId id, Bits lower, Bits value, Bits upper, double tol) {
  if (value - lower <= upper - value) return one_sided(id, lower, value, tol, "lower bound");
  return one_sided(id, value, upper, tol, "upper bound");
}

Bits log2_rational(const Rational& r) { return log2_big(r.get_num()) - log2_big(r.get_den()); }

Bits h_view(const Joint& j, const View& v) { return entropy(project(j, v)); }

// Whether the value of `from` fixes the value of `to` on the support.
bool determines(const Joint& j, const View& from, const View& to) {
  std::map<Tuple, Tuple> seen;
  for (const auto& [t, p] : j.probs()) {
    Tuple key;
    Tuple val;
    for (const Word& w : from) key.push_back(w.eval(j.carrier(), t));
    for (const Word& w : to) val.push_back(w.eval(j.carrier(), t));
    auto [it, fresh] = seen.emplace(std::move(key), val);
    if (!fresh && it->second != val) return false;
  }
  return true;
}

struct PairStats {
  Bits hx, hy, hxy, hsum, a;
};

PairStats pair_stats(const Joint& j) {
  PairStats s{};
  s.hx = entropy(marginal_dist(j, 0));
  s.hy = entropy(marginal_dist(j, 1));
  s.hxy = entropy(j);
  s.hsum = entropy(pushforward(j, words::sum01()));
  s.a = 2 * s.hxy - s.hsum;
  return s;
}

Bits clamp0(Bits v) { return std::max<Bits>(0, v); }

using words::x;

SlackReport evaluate_unwitnessed(LawId id, const LawInputs& in, double tol) {
  switch (id) {
    case LawId::SUBADD: {
      const Joint& j = need_joint(id, in, 2);
      return one_sided(id, entropy(j), entropy(marginal_dist(j, 0)) + entropy(marginal_dist(j, 1)), tol);
    }
    case LawId::COND_REDUCES: {
      const Joint& j = need_joint(id, in, 2);
      return one_sided(id, conditional_entropy(j, {0}, {1}), entropy(marginal_dist(j, 0)), tol);
    }
    case LawId::CHAIN: {
      const Joint& j = need_joint(id, in, 0);
      Bits rhs = 0;
      std::vector<std::size_t> prefix;
      for (std::size_t i = 0; i < j.arity(); ++i) {
        const std::size_t target = i;
        rhs += conditional_entropy(j, std::span<const std::size_t>(&target, 1), prefix);
        prefix.push_back(i);
      }
      return identity(id, entropy(j), rhs, tol);
    }
    case LawId::SUBMOD: {
      const Joint& j = need_joint(id, in, 0);
      if (in.views.size() < 4) mismatch(id, "expected views X, Y, Z, W");
      for (const View& v : in.views) {
        if (v.empty()) mismatch(id, "empty view");
        for (const Word& w : v) w.validate(j.carrier(), j.arity());
      }
      const View &vx = in.views[0], &vy = in.views[1], &vz = in.views[2], &vw = in.views[3];
      View zw = vz;
      zw.insert(zw.end(), vw.begin(), vw.end());
      if (!determines(j, zw, vx)) mismatch(id, "(Z, W) does not determine X");
      if (!determines(j, vz, vy)) mismatch(id, "Z does not determine Y");
      if (!determines(j, vw, vy)) mismatch(id, "W does not determine Y");
      return one_sided(id, h_view(j, vx) + h_view(j, vy), h_view(j, vz) + h_view(j, vw), tol);
    }
    case LawId::MAXPROB: {
      const Dist& d = need_dist(id, in, 0);
      return one_sided(id, -log2_rational(d.max_prob()), entropy(d), tol);
    }
    case LawId::DETERMINES: {
      const Joint& j = need_joint(id, in, 0);
      if (in.views.size() < 2 || in.views[0].empty() || in.views[1].empty()) mismatch(id, "expected views X, f(X)");
      for (const View& v : in.views) {
        for (const Word& w : v) w.validate(j.carrier(), j.arity());
      }
      if (!determines(j, in.views[0], in.views[1])) mismatch(id, "X does not determine f(X)");
      return one_sided(id, h_view(j, in.views[1]), h_view(j, in.views[0]), tol);
    }
    case LawId::INDEP_SUMDIFF: {
      const Dist& dx = need_dist(id, in, 0);
      const Dist& dy = need_dist(id, in, 1);
      need_same_carrier(id, dx, dy);
      const Bits lhs = std::max(entropy(dx), entropy(dy));
      const Bits rhs = std::min(entropy(combine_independent(dx, dy, words::sum01())),
                                entropy(combine_independent(dx, dy, words::diff01())));
      return one_sided(id, lhs, rhs, tol);
    }
    case LawId::CIT_IDENTITY: {
      const Joint& j = need_joint(id, in, 0);
      if (!in.statistic) mismatch(id, "expected a statistic");
      const Bits lhs = entropy(cond_indep_trials(j, *in.statistic));
      return identity(id, lhs, 2 * entropy(j) - entropy(pushforward(j, *in.statistic)), tol);
    }
    case LawId::ENERGY_BOUNDS: {
      const Dist& da = need_dist(id, in, 0);
      const Dist& db = need_dist(id, in, 1);
      need_same_carrier(id, da, db);
      if (!is_uniform(da) || !is_uniform(db)) mismatch(id, "both inputs must be uniform on their supports");
      const auto a = da.support();
      const auto b = db.support();
      const Bits energy = additive_energy(independent_join(Joint(da), Joint(db)), tol).value;
      const Bits lower = 2 * std::log2(a.size()) + 2 * std::log2(b.size()) -
                         std::log2(sumset(da.carrier(), a, b).size());
      const Bits upper = std::log2(static_cast<double>(set_energy_by_representation(da.carrier(), a, b)));
      return two_sided(id, lower, energy, upper, tol);
    }
    case LawId::LARGE_CHAIN: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      return two_sided(id, s.hxy, s.a, s.hxy + std::min(s.hx, s.hy), tol);
    }
    case LawId::NAIVE_FWD: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      const Bits log_c = clamp0(1.5 * (s.hx + s.hy) - s.a);
      return one_sided(id, s.hsum, 0.5 * (s.hx + s.hy) + log_c, tol);
    }
    case LawId::NAIVE_BWD: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      const Bits log_c = clamp0(s.hsum - 0.5 * (s.hx + s.hy));
      const Bits c_prime = s.hx + s.hy - s.hxy;
      return one_sided(id, 1.5 * (s.hx + s.hy) - log_c - 2 * c_prime, s.a, tol);
    }
    case LawId::SMALL_FWD: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      const Bits log_c = clamp0(s.hx + s.hy - s.hsum);
      return one_sided(id, s.a, s.hx + s.hy + log_c, tol);
    }
    case LawId::SMALL_BWD: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      const Bits log_c = clamp0(s.a - s.hx - s.hy);
      const Bits c_prime = s.hx + s.hy - s.hxy;
      return one_sided(id, s.hx + s.hy - log_c - 2 * c_prime, s.hsum, tol);
    }
    case LawId::LEM_A2: {
      const Joint& j = need_joint(id, in, 2);
      const PairStats s = pair_stats(j);
      const Joint trials = cond_indep_trials(j, words::sum01());
      const Bits lhs = std::max(entropy(pushforward(trials, x(0) - x(2))), entropy(pushforward(trials, x(0) - x(3))));
      return one_sided(id, lhs, 2 * s.hx + 2 * s.hy - s.a, tol);
    }
    case LawId::BSG: {
      const BsgReport b = bsg_report(need_joint(id, in, 2), tol);
      const Bits slack = b.min_slack();
      if (slack == b.slack_x1) return one_sided(id, b.h_x - 2 * b.log_c, b.h_x1_given_s, tol, "H{X1|X+Y} bound");
      if (slack == b.slack_y2) return one_sided(id, b.h_y - 2 * b.log_c, b.h_y2_given_s, tol, "H{Y2|X+Y} bound");
      return one_sided(id, b.h_sum_given_s, 0.5 * (b.h_x + b.h_y) + b.log_c, tol, "H{X1+Y2|X+Y} bound");
    }
    case LawId::SYMM: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      const Bits log_c = clamp0(1.5 * (s.hx + s.hy) - s.a);
      return one_sided(id, std::abs(s.hx - s.hy), 2 * log_c, tol);
    }
    case LawId::ASYMM: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      const Bits log_c = clamp0(2 * s.hx + s.hy - s.a);
      return one_sided(id, s.hsum - s.hy, log_c, tol);
    }
    case LawId::DOUBLING_EQUIV: {
      const Dist& d = need_dist(id, in, 0);
      const Bits h = entropy(d);
      return identity(id, self_energy(d, tol).via_construction, 3 * h - doubling(d), tol);
    }
    case LawId::UA_DOUBLING: {
      const Dist& d = need_dist(id, in, 0);
      if (!is_uniform(d)) mismatch(id, "input must be uniform on its support");
      const auto a = d.support();
      const Bits lhs = 3 * std::log2(a.size()) -
                       std::log2(static_cast<double>(set_energy_by_representation(d.carrier(), a, a)));
      return one_sided(id, lhs, doubling(d), tol);
    }
    case LawId::SIDON_SET: {
      const Dist& d = need_dist(id, in, 0);
      if (!is_sidon_set(d.carrier(), d.support())) mismatch(id, "support is not a Sidon set");
      return one_sided(id, entropy(d) - 1, doubling(d), tol);
    }
    case LawId::SIDON_COND: {
      const Joint& j = need_joint(id, in, 2);
      const Joint trials = cond_indep_trials(j, x(1));
      const Bits h_cond = conditional_entropy(j, {0}, {1});
      // Averaged over Z, the Sidon hypothesis reads H{X1+X2|Z} - H{X|Z} >= H{X|Z} - 1.
      const Bits h_sum_cond = conditional_entropy(project(trials, std::array{x(0) + x(2), x(1)}), {0}, {1});
      if (h_sum_cond - h_cond < h_cond - 1 - tol) mismatch(id, "X given Z is not Sidon");
      const Bits h_sum = entropy(pushforward(trials, x(0) + x(2)));
      return one_sided(id, h_cond, (h_sum + 1) / 2, tol);
    }
    case LawId::KT: {
      const KatzTaoReport k =
          katz_tao_report(need_dist(id, in, 0), need_dist(id, in, 1), need_dist(id, in, 2), need_dist(id, in, 3), tol);
      return one_sided(id, k.lhs, k.rhs, tol);
    }
    case LawId::KT_SECOND: {
      const KatzTaoReport k = katz_tao_report(need_dist(id, in, 0), tol);
      return one_sided(id, k.second->lhs, k.second->rhs, tol, "log C = " + std::to_string(k.second->log_c));
    }
    case LawId::PR: {
      const Dist& w = need_dist(id, in, 0);
      if (in.dists.size() < 2) mismatch(id, "expected at least one W_i");
      return plunnecke_check(w, std::span<const Dist>(in.dists).subspan(1), tol);
    }
    case LawId::CS_PROBE: {
      const Dist& dx = need_dist(id, in, 0);
      const Dist& dy = need_dist(id, in, 1);
      need_same_carrier(id, dx, dy);
      const Bits hx = entropy(dx);
      const Bits hy = entropy(dy);
      const Bits axy = 2 * (hx + hy) - entropy(combine_independent(dx, dy, words::sum01()));
      const Bits ax = 3 * hx - doubling(dx);
      const Bits ay = 3 * hy - doubling(dy);
      return one_sided(id, axy, 0.5 * ax + 0.5 * ay, tol);
    }
    case LawId::SMALL_FWD_AS_PROVED: {
      const PairStats s = pair_stats(need_joint(id, in, 2));
      const Bits log_c = clamp0(s.hx + s.hy - s.hsum);
      return one_sided(id, s.a, s.hx + s.hy - log_c, tol);
    }
  }
  mismatch(id, "unknown law");
}

}  // namespace

std::span<const LawInfo> registry() { return kRegistry; }

const LawInfo& info(LawId id) { return kRegistry[static_cast<std::size_t>(id)]; }

std::string_view name(LawId id) { return info(id).name; }

std::optional<LawId> law_from_name(std::string_view text) {
  for (const LawInfo& l : kRegistry) {
    if (l.name == text) return l.id;
  }
  return std::nullopt;
}

Json LawInputs::to_json() const {
  Json out = Json::object();
  if (!joints.empty()) {
    Json js = Json::array();
    for (const Joint& j : joints) js.push_back(entropic::to_json(j));
    out["joints"] = js;
  }
  if (!dists.empty()) {
    Json ds = Json::array();
    for (const Dist& d : dists) ds.push_back(entropic::to_json(d));
    out["dists"] = ds;
  }
  if (!views.empty()) {
    Json vs = Json::array();
    for (const View& v : views) {
      Json ws = Json::array();
      for (const Word& w : v) ws.push_back(w.to_string());
      vs.push_back(ws);
    }
    out["views"] = vs;
  }
  if (statistic) out["statistic"] = statistic->to_string();
  return out;
}

SlackReport evaluate_law(LawId law, const LawInputs& inputs, double tol) {
  SlackReport r = evaluate_unwitnessed(law, inputs, tol);
  r.law = law;
  r.witness = inputs.to_json();
  return r;
}

Bits BsgReport::min_slack() const { return std::min({slack_x1, slack_y2, slack_sum}); }

BsgReport bsg_report(const Joint& j, double tol) {
  if (j.arity() != 2) {
    throw Error(ErrorCode::ArityMismatch, "bsg_report needs a joint of arity 2, got " + std::to_string(j.arity()));
  }
  const PairStats s = pair_stats(j);
  const Word sum = words::sum01();
  const Joint trials = cond_indep_trials(j, sum);
  BsgReport b;
  b.h_x = s.hx;
  b.h_y = s.hy;
  b.log_c = clamp0(1.5 * (s.hx + s.hy) - s.a);
  b.h_x1_given_s = conditional_entropy_given_statistic(trials, {0}, sum);
  b.h_y2_given_s = conditional_entropy_given_statistic(trials, {3}, sum);
  b.h_sum_given_s = conditional_entropy(project(trials, std::array{x(0) + x(3), sum}), {0}, {1});
  b.slack_x1 = b.h_x1_given_s - (s.hx - 2 * b.log_c);
  b.slack_y2 = b.h_y2_given_s - (s.hy - 2 * b.log_c);
  b.slack_sum = 0.5 * (s.hx + s.hy) + b.log_c - b.h_sum_given_s;
  b.pass = b.min_slack() >= -tol;
  return b;
}

KatzTaoReport katz_tao_report(const Dist& dx, const Dist& dy, const Dist& dz, const Dist& dw, double tol) {
  for (const Dist* d : {&dx, &dy, &dz, &dw}) {
    need_ring_nonzero(LawId::KT, *d);
    need_same_carrier(LawId::KT, dx, *d);
  }
  const Word prod = words::product01();
  const Dist xy = combine_independent(dx, dy, prod);
  const Dist zw = combine_independent(dz, dw, prod);
  KatzTaoReport k;
  k.lhs = entropy(combine_independent(xy, zw, words::sum01())) + entropy(dx) + entropy(dy) + 2 * entropy(dz) +
          2 * entropy(dw);
  k.rhs = entropy(combine_independent(dx, dy, words::sum01())) + entropy(combine_independent(dz, dw, words::diff01())) +
          entropy(combine_independent(dx, dz, prod)) + 2 * entropy(combine_independent(dy, dz, prod)) +
          2 * entropy(zw);
  k.slack = k.rhs - k.lhs;
  k.pass = k.slack >= -tol;
  if (dx == dy && dx == dz && dx == dw) {
    KatzTaoReport::Second s;
    const Bits h = entropy(dx);
    const Bits a = 3 * h - doubling(dx);
    const Bits m = 2 * 2 * h - entropy(xy);
    s.log_c = 3 * h - std::min(a, m);
    s.lhs = entropy(combine_independent(xy, zw, words::sum01()));
    s.rhs = h + 8 * s.log_c;
    s.slack = s.rhs - s.lhs;
    s.pass = s.slack >= -tol;
    k.second = s;
  }
  return k;
}

KatzTaoReport katz_tao_report(const Dist& d, double tol) { return katz_tao_report(d, d, d, d, tol); }

SlackReport plunnecke_check(const Dist& w, std::span<const Dist> ws, double tol) {
  if (ws.empty()) throw Error(ErrorCode::SignatureMismatch, "PR: expected at least one W_i");
  const Bits hw = entropy(w);
  Bits rhs = hw;
  Dist total = w;
  for (const Dist& wi : ws) {
    need_same_carrier(LawId::PR, w, wi);
    rhs += entropy(combine_independent(w, wi, words::sum01())) - hw;
    total = combine_independent(total, wi, words::sum01());
  }
  SlackReport r = one_sided(LawId::PR, entropy(total), rhs, tol);
  LawInputs in;
  in.dists.push_back(w);
  in.dists.insert(in.dists.end(), ws.begin(), ws.end());
  r.witness = in.to_json();
  return r;
}

// ---------------------------------------------------------------------------
// Suite

namespace {

using gen::Rng;
using gen::SizeCaps;

struct NamedInputs {
  std::string name;
  LawInputs inputs;
};

LawInputs joints_of(Joint j) {
  LawInputs in;
  in.joints.push_back(std::move(j));
  return in;
}

LawInputs dists_of(std::vector<Dist> ds) {
  LawInputs in;
  in.dists = std::move(ds);
  return in;
}

Joint pair_of(const Dist& a, const Dist& b) { return independent_join(Joint(a), Joint(b)); }

Carrier random_group_with_mult(Rng& rng) {
  if (rng.below(6) == 0) return GroupSpec::fp_multiplicative(rng.pick<long>(std::array<long, 4>{3, 5, 7, 11}));
  return gen::random_group(rng);
}

Joint random_graph_coupling(Rng& rng, const Carrier& carrier, const SizeCaps& caps) {
  auto left = gen::random_set(rng, carrier, 1 + rng.below(6), caps);
  auto right = gen::random_set(rng, carrier, 1 + rng.below(6), caps);
  std::vector<BipartiteGraph::Edge> edges;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t k = 0; k < right.size(); ++k) {
      if (rng.coin()) edges.emplace_back(i, k);
    }
  }
  if (edges.empty()) edges.emplace_back(0, 0);
  return graph_coupling(BipartiteGraph(std::move(left), std::move(right), std::move(edges)), carrier);
}

Joint random_pair(Rng& rng, const SizeCaps& caps) {
  const Carrier c = random_group_with_mult(rng);
  switch (rng.below(5)) {
    case 0: return pair_of(gen::random_dist(rng, c, caps), gen::random_dist(rng, c, caps));
    case 1: return random_graph_coupling(rng, c, caps);
    case 2: {
      // Y a function of X.
      const Dist d = gen::random_dist(rng, c, caps);
      const std::array<Word, 4> fs = {x(0), -x(0), x(0) + x(0), x(0) - x(0)};
      const Word& f = fs[rng.below(fs.size())];
      Joint::Map m;
      for (const auto& [e, p] : d.probs()) m.emplace(Tuple{e, f.eval(c, std::span<const Element>(&e, 1))}, p);
      return Joint(c, 2, std::move(m));
    }
    default: return gen::random_joint(rng, c, 2, caps);
  }
}

Dist random_uniform(Rng& rng, const Carrier& c, const SizeCaps& caps) {
  auto s = gen::random_set(rng, c, 1 + rng.below(caps.max_support), caps);
  return uniform_on(c, s);
}

Joint random_sidon_fibres(Rng& rng, const SizeCaps& caps) {
  const Carrier c = gen::random_group(rng);
  const auto labels = gen::random_set(rng, c, 1 + rng.below(3), caps);
  const auto weights = gen::random_masses(rng, labels.size(), 16);
  Joint::Map m;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto support = gen::random_sidon_set(rng, c, 1 + rng.below(6), caps);
    const Dist fibre = gen::random_dist_on(rng, c, support, caps.max_den);
    for (const auto& [e, p] : fibre.probs()) m.emplace(Tuple{e, labels[i]}, p * weights[i]);
  }
  return Joint(c, 2, std::move(m));
}

LawInputs submod_instance(Rng& rng, const SizeCaps& caps) {
  const Carrier c = random_group_with_mult(rng);
  LawInputs in;
  switch (rng.below(4)) {
    case 0:
      in.joints.push_back(gen::random_joint(rng, c, 3, caps));
      in.views = {{x(0), x(1), x(2)}, {x(0)}, {x(0), x(1)}, {x(0), x(2)}};
      break;
    case 1:
      in.joints.push_back(gen::random_joint(rng, c, 2, caps));
      in.views = {{x(0), x(1)}, {x(0) + x(1)}, {x(0), x(1)}, {x(0) + x(1)}};
      break;
    case 2:
      in.joints.push_back(gen::random_joint(rng, c, 2, caps));
      in.views = {{x(0)}, {x(0) + x(1)}, {x(0), x(1)}, {x(0) + x(1), x(1)}};
      break;
    default:
      in.joints.push_back(Joint(gen::random_dist(rng, c, caps)));
      in.views = {{x(0)}, {x(0) + x(0)}, {x(0)}, {x(0)}};
      break;
  }
  return in;
}

Word random_statistic(Rng& rng, std::size_t arity) {
  switch (rng.below(3)) {
    case 0: return x(rng.below(arity));
    case 1: {
      Word w = x(0);
      for (std::size_t i = 1; i < arity; ++i) {
        if (rng.coin()) w = w + x(i);
      }
      return w;
    }
    default: return arity > 1 ? x(0) - x(1) : x(0) + x(0);
  }
}

LawInputs random_instance(LawId id, Rng& rng, const SizeCaps& caps) {
  switch (id) {
    case LawId::SUBADD:
    case LawId::COND_REDUCES:
    case LawId::LARGE_CHAIN:
    case LawId::NAIVE_FWD:
    case LawId::NAIVE_BWD:
    case LawId::SMALL_FWD:
    case LawId::SMALL_BWD:
    case LawId::LEM_A2:
    case LawId::BSG:
    case LawId::SYMM:
    case LawId::ASYMM:
    case LawId::SMALL_FWD_AS_PROVED: return joints_of(random_pair(rng, caps));
    case LawId::CHAIN: {
      const Carrier c = random_group_with_mult(rng);
      return joints_of(gen::random_joint(rng, c, 1 + rng.below(4), caps));
    }
    case LawId::SUBMOD: return submod_instance(rng, caps);
    case LawId::DETERMINES: {
      const Carrier c = random_group_with_mult(rng);
      LawInputs in = joints_of(gen::random_joint(rng, c, 2, caps));
      const std::array<View, 4> fs = {View{x(0) + x(1)}, View{x(0) - x(1)}, View{x(1)}, View{x(0) + x(0), x(1)}};
      in.views = {{x(0), x(1)}, fs[rng.below(fs.size())]};
      return in;
    }
    case LawId::MAXPROB:
    case LawId::DOUBLING_EQUIV: return dists_of({gen::random_dist(rng, random_group_with_mult(rng), caps)});
    case LawId::INDEP_SUMDIFF:
    case LawId::CS_PROBE: {
      const Carrier c = random_group_with_mult(rng);
      return dists_of({gen::random_dist(rng, c, caps), gen::random_dist(rng, c, caps)});
    }
    case LawId::CIT_IDENTITY: {
      const Carrier c = random_group_with_mult(rng);
      const std::size_t arity = 1 + rng.below(3);
      LawInputs in = joints_of(gen::random_joint(rng, c, arity, caps));
      in.statistic = random_statistic(rng, arity);
      return in;
    }
    case LawId::ENERGY_BOUNDS: {
      const Carrier c = random_group_with_mult(rng);
      return dists_of({random_uniform(rng, c, caps), random_uniform(rng, c, caps)});
    }
    case LawId::UA_DOUBLING: return dists_of({random_uniform(rng, random_group_with_mult(rng), caps)});
    case LawId::SIDON_SET: {
      const Carrier c = gen::random_group(rng);
      const auto s = gen::random_sidon_set(rng, c, 1 + rng.below(6), caps);
      return dists_of({gen::random_dist_on(rng, c, s, caps.max_den)});
    }
    case LawId::SIDON_COND: return joints_of(random_sidon_fibres(rng, caps));
    case LawId::KT: {
      const Carrier c = gen::random_ring(rng);
      SizeCaps small = caps;
      small.max_support = std::min<std::size_t>(caps.max_support, 4);
      if (rng.below(4) == 0) {
        const Dist d = gen::random_dist(rng, c, small, true);
        return dists_of({d, d, d, d});
      }
      std::vector<Dist> ds;
      for (int i = 0; i < 4; ++i) ds.push_back(gen::random_dist(rng, c, small, true));
      return dists_of(std::move(ds));
    }
    case LawId::KT_SECOND: {
      SizeCaps small = caps;
      small.max_support = std::min<std::size_t>(caps.max_support, 5);
      return dists_of({gen::random_dist(rng, gen::random_ring(rng), small, true)});
    }
    case LawId::PR: {
      const Carrier c = random_group_with_mult(rng);
      SizeCaps small = caps;
      small.max_support = std::min<std::size_t>(caps.max_support, 5);
      std::vector<Dist> ds;
      const std::size_t m = 1 + rng.below(3);
      for (std::size_t i = 0; i <= m; ++i) ds.push_back(gen::random_dist(rng, c, small));
      return dists_of(std::move(ds));
    }
  }
  return {};
}

// The paper's named instances, reused across every law whose signature they fit.
std::vector<NamedInputs> battery_instances(LawId id) {
  const Carrier z = GroupSpec::integers();
  const Dist hegarty = uniform_on(z, {-7, -5, -4, -3, 0, 4, 5, 7});
  const Dist hegarty_neg = uniform_on(z, {7, 5, 4, 3, 0, -4, -5, -7});
  const Dist u012 = uniform_on(z, {0, 1, 2});
  const Dist sidon = uniform_on(z, {1, 2, 5, 11});
  auto zn = [](long n) {
    std::vector<Element> all;
    for (long i = 0; i < n; ++i) all.push_back(Element::scalar(i));
    return uniform_on(GroupSpec::integers_mod(n), all);
  };
  auto fp_star = [](long p) {
    std::vector<Element> all;
    for (long i = 1; i < p; ++i) all.push_back(Element::scalar(i));
    return uniform_on(RingSpec::fp(p), all);
  };
  const Dist z4 = zn(4), z6 = zn(6), z8 = zn(8);
  const Dist f5 = fp_star(5), f7 = fp_star(7);
  const Dist u0123 = uniform_on(z, {0, 1, 2, 3});
  const Joint diagonal = project(Joint(u0123), std::array{x(0), x(0)});
  std::vector<BipartiteGraph::Edge> matching = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  const Joint matched = graph_coupling(
      BipartiteGraph(u0123.support(), uniform_on(z, {0, 10, 20, 30}).support(), matching), z);

  const std::vector<NamedInputs> pairs = {
      {"hegarty", joints_of(pair_of(hegarty, hegarty_neg))},
      {"u012", joints_of(pair_of(u012, u012))},
      {"z4", joints_of(pair_of(z4, z4))},
      {"z6", joints_of(pair_of(z6, z6))},
      {"z8", joints_of(pair_of(z8, z8))},
      {"fp5_star", joints_of(pair_of(f5, f5))},
      {"diagonal", joints_of(diagonal)},
      {"matching", joints_of(matched)},
  };
  switch (id) {
    case LawId::SUBADD:
    case LawId::COND_REDUCES:
    case LawId::CHAIN:
    case LawId::LARGE_CHAIN:
    case LawId::NAIVE_FWD:
    case LawId::NAIVE_BWD:
    case LawId::SMALL_FWD:
    case LawId::SMALL_BWD:
    case LawId::LEM_A2:
    case LawId::BSG:
    case LawId::SYMM:
    case LawId::ASYMM:
    case LawId::SMALL_FWD_AS_PROVED: return pairs;
    case LawId::SUBMOD: {
      LawInputs in = joints_of(pair_of(hegarty, hegarty_neg));
      in.views = {{x(0)}, {x(0) + x(1)}, {x(0), x(1)}, {x(0) + x(1), x(1)}};
      LawInputs trivial = joints_of(Joint(u012));
      trivial.views = {{x(0)}, {x(0) + x(0)}, {x(0)}, {x(0)}};
      return {{"hegarty", in}, {"u012", trivial}};
    }
    case LawId::DETERMINES: {
      LawInputs in = joints_of(pair_of(hegarty, hegarty_neg));
      in.views = {{x(0), x(1)}, {x(0) + x(1)}};
      return {{"hegarty", in}};
    }
    case LawId::CIT_IDENTITY: {
      LawInputs a = joints_of(pair_of(hegarty, hegarty_neg));
      a.statistic = words::sum01();
      LawInputs b = joints_of(diagonal);
      b.statistic = x(0);
      return {{"hegarty", a}, {"diagonal", b}};
    }
    case LawId::MAXPROB:
    case LawId::DOUBLING_EQUIV:
    case LawId::UA_DOUBLING:
      return {{"hegarty", dists_of({hegarty})}, {"u012", dists_of({u012})}, {"sidon", dists_of({sidon})},
              {"z4", dists_of({z4})}, {"z6", dists_of({z6})}, {"fp5_star", dists_of({f5})}};
    case LawId::ENERGY_BOUNDS:
    case LawId::INDEP_SUMDIFF:
    case LawId::CS_PROBE:
      return {{"hegarty", dists_of({hegarty, hegarty_neg})},
              {"u012", dists_of({u012, u012})},
              {"z4", dists_of({z4, z4})},
              {"sidon", dists_of({sidon, sidon})}};
    case LawId::SIDON_SET: return {{"sidon", dists_of({sidon})}};
    case LawId::SIDON_COND: {
      const Joint with_constant = project(Joint(sidon), std::array{x(0), x(0) - x(0)});
      const Joint u012_constant = project(Joint(u012), std::array{x(0), x(0) - x(0)});
      return {{"sidon", joints_of(with_constant)}, {"u012", joints_of(u012_constant)}};
    }
    case LawId::KT:
    case LawId::KT_SECOND: {
      const Dist ones = Dist::point_mass(RingSpec::fp(7), Element::scalar(1));
      const Dist u12 = uniform_on(RingSpec::integer_ring(), {1, 2});
      return {{"fp5_star", dists_of({f5, f5, f5, f5})},
              {"fp7_star", dists_of({f7, f7, f7, f7})},
              {"u12", dists_of({u12, u12, u12, u12})},
              {"ones_f7", dists_of({ones, ones, ones, ones})}};
    }
    case LawId::PR: {
      const Dist u01 = uniform_on(z, {0, 1});
      const Dist skew(GroupSpec::integers_mod(6), {{Element::scalar(0), Rational(1, 2)},
                                                   {Element::scalar(1), Rational(1, 3)},
                                                   {Element::scalar(3), Rational(1, 6)}});
      return {{"z6", dists_of({z6, skew, z6})},
              {"u01", dists_of({u01, u01})},
              {"hegarty", dists_of({hegarty, hegarty, hegarty_neg})}};
    }
  }
  return {};
}

struct Accumulator {
  LawSummary summary;
  bool any = false;

  void add(const SlackReport& r, const std::string& label, bool identity_law, std::size_t keep) {
    const Bits s = identity_law ? -std::abs(r.slack) : r.slack;
    summary.min_slack = any ? std::min(summary.min_slack, s) : s;
    any = true;
    ++summary.trials;
    if (r.pass) return;
    ++summary.failures;
    if (summary.witnesses.size() >= keep) return;
    Json w = {{"instance", label}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}, {"inputs", r.witness}};
    if (!r.detail.empty()) w["detail"] = r.detail;
    summary.witnesses.push_back(std::move(w));
  }

  void add_error(const Error& e, const std::string& label, const Json& inputs, std::size_t keep) {
    ++summary.trials;
    ++summary.failures;
    if (summary.witnesses.size() < keep) {
      summary.witnesses.push_back({{"instance", label}, {"error", e.what()}, {"inputs", inputs}});
    }
  }
};

}  // namespace

std::size_t SuiteReport::theorem_failures() const {
  std::size_t n = 0;
  for (const LawSummary& l : laws) {
    if (info(l.id).theorem) n += l.failures;
  }
  return n;
}

Json SuiteReport::to_json() const {
  Json ls = Json::array();
  for (const LawSummary& l : laws) {
    ls.push_back({{"id", name(l.id)},
                  {"theorem", info(l.id).theorem},
                  {"trials", l.trials},
                  {"failures", l.failures},
                  {"minSlack", l.min_slack},
                  {"witnesses", l.witnesses}});
  }
  return {{"seed", seed}, {"trials", trials}, {"theoremFailures", theorem_failures()}, {"laws", ls}};
}

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
  std::vector<LawId> ids = config.laws;
  if (ids.empty()) {
    for (const LawInfo& l : kRegistry) ids.push_back(l.id);
  }
  SuiteReport report;
  report.seed = config.seed;
  report.trials = config.trials;
  for (LawId id : ids) {
    const bool ident = info(id).identity;
    Accumulator acc;
    acc.summary.id = id;
    auto run_one = [&](const std::function<LawInputs()>& make, const std::string& label) {
      LawInputs in;
      try {
        in = make();
        acc.add(evaluate_law(id, in, config.tol), label, ident, config.max_witnesses);
      } catch (const Error& e) {
        acc.add_error(e, label, in.to_json(), config.max_witnesses);
      }
    };
    if (config.battery) {
      for (const NamedInputs& b : battery_instances(id)) {
        run_one([&] { return b.inputs; }, "battery:" + b.name);
      }
    }
    if (config.random_trials) {
      for (std::size_t t = 0; t < config.trials; ++t) {
        Rng rng(gen::mix_seed(config.seed, static_cast<std::uint64_t>(id) + 1, t));
        run_one([&] { return random_instance(id, rng, config.caps); }, "trial:" + std::to_string(t));
      }
    }
    report.laws.push_back(std::move(acc.summary));
  }
  return report;
}

}  // namespace entropic::laws
