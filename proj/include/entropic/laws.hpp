#pragma once

// Registry of entropy inequalities and identities, each evaluable on concrete
// instances with a signed-slack report, plus a seeded randomized suite.
//
// Constants named log C in the statements are always inferred from the
// instance being checked (the tightest value satisfying the hypothesis,
// clamped at zero), so every conditional law is checkable on any input.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entropic/energy.hpp"
#include "entropic/random.hpp"
#include "entropic/serialization.hpp"

namespace entropic::laws {

enum class LawId {
  SUBADD,
  COND_REDUCES,
  CHAIN,
  SUBMOD,
  MAXPROB,
  DETERMINES,
  INDEP_SUMDIFF,
  CIT_IDENTITY,
  ENERGY_BOUNDS,
  LARGE_CHAIN,
  NAIVE_FWD,
  NAIVE_BWD,
  SMALL_FWD,
  SMALL_BWD,
  LEM_A2,
  BSG,
  SYMM,
  ASYMM,
  DOUBLING_EQUIV,
  UA_DOUBLING,
  SIDON_SET,
  SIDON_COND,
  KT,
  KT_SECOND,
  PR,
  CS_PROBE,
  SMALL_FWD_AS_PROVED,
};

struct LawInfo {
  LawId id;
  std::string_view name;
  /// The inequality in words, with the same lhs/rhs orientation as the report.
  std::string_view statement;
  /// Which fields of LawInputs the law reads.
  std::string_view signature;
  /// False for probes of statements that are known to fail.
  bool theorem;
  /// Identities pass when |slack| <= tol rather than slack >= -tol.
  bool identity;
};

std::span<const LawInfo> registry();
const LawInfo& info(LawId id);
std::string_view name(LawId id);
std::optional<LawId> law_from_name(std::string_view name);

/// A random variable given as a tuple of words over the coordinates of a
/// base joint.
using View = std::vector<Word>;

struct LawInputs {
  std::vector<Joint> joints;
  std::vector<Dist> dists;
  std::vector<View> views;
  std::optional<Word> statistic;

  Json to_json() const;
};

struct SlackReport {
  LawId law;
  Bits lhs = 0;
  Bits rhs = 0;
  /// rhs - lhs. Two-sided laws report the binding side.
  Bits slack = 0;
  bool pass = false;
  std::string detail;
  Json witness;
};

/// Throws SignatureMismatch when the inputs do not fit the law, including a
/// failed determination hypothesis for SUBMOD and DETERMINES.
SlackReport evaluate_law(LawId law, const LawInputs& inputs, double tol = kDefaultTolerance);

struct BsgReport {
  Bits log_c = 0;
  Bits h_x = 0;
  Bits h_y = 0;
  Bits h_x1_given_s = 0;
  Bits h_y2_given_s = 0;
  Bits h_sum_given_s = 0;
  /// Slack of each of the three bounds, rhs - lhs oriented so >= 0 passes.
  Bits slack_x1 = 0;
  Bits slack_y2 = 0;
  Bits slack_sum = 0;
  bool pass = false;

  Bits min_slack() const;
};

/// For (X, Y) with log C = (3/2)(H{X}+H{Y}) - A{X,Y} clamped at 0 and S = X+Y,
/// two conditionally independent trials relative to S satisfy
/// H{X1|S} >= H{X} - 2 log C, H{Y2|S} >= H{Y} - 2 log C and
/// H{X1+Y2|S} <= H{X}/2 + H{Y}/2 + log C.
BsgReport bsg_report(const Joint& j, double tol = kDefaultTolerance);

struct KatzTaoReport {
  Bits lhs = 0;
  Bits rhs = 0;
  Bits slack = 0;
  bool pass = false;

  struct Second {
    Bits log_c = 0;
    Bits lhs = 0;
    Bits rhs = 0;
    Bits slack = 0;
    bool pass = false;
  };
  /// Present for identically distributed inputs.
  std::optional<Second> second;
};

/// H{XY+ZW} + H{X} + H{Y} + 2H{Z} + 2H{W}
///   <= H{X+Y} + H{Z-W} + H{XZ} + 2H{YZ} + 2H{ZW}
/// for independent X, Y, Z, W with nonzero values in a ring.
KatzTaoReport katz_tao_report(const Dist& x, const Dist& y, const Dist& z, const Dist& w,
                              double tol = kDefaultTolerance);
KatzTaoReport katz_tao_report(const Dist& x, double tol = kDefaultTolerance);

/// H{W+W_1+...+W_m} <= H{W} + sum_i (H{W+W_i} - H{W}), all independent.
SlackReport plunnecke_check(const Dist& w, std::span<const Dist> ws, double tol = kDefaultTolerance);

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  /// Empty means every law in the registry.
  std::vector<LawId> laws;
  gen::SizeCaps caps;
  double tol = kDefaultTolerance;
  bool random_trials = true;
  bool battery = true;
  /// Witnesses kept per law.
  std::size_t max_witnesses = 5;
};

struct LawSummary {
  LawId id;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Identities contribute -|deviation|, so min_slack >= -tol means pass
  /// for every kind of law.
  Bits min_slack = 0;
  std::vector<Json> witnesses;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<LawSummary> laws;

  std::size_t theorem_failures() const;
  Json to_json() const;
};

/// Deterministic in the seed. Throws InvalidConfig when trials == 0.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace entropic::laws
