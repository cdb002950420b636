#pragma once

// Reproductions of the worked examples and non-asserting scans for the
// sum-product style conjectures. Scans report data only; nothing here fails a
// run except invalid parameters.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entropic/energy.hpp"
#include "entropic/serialization.hpp"

namespace entropic::explorer {

/// A flat, ordered list of named values, rendered by the CLI. Entries of kind
/// Bits are converted to nats at presentation time when requested.
struct Report {
  struct Entry {
    enum class Kind { Bits, Number, Flag, Text };
    std::string key;
    Kind kind = Kind::Number;
    double value = 0;
    bool flag = false;
    std::string text;
  };

  std::string title;
  std::vector<Entry> entries;

  Report& bits(std::string key, Bits v);
  Report& number(std::string key, double v);
  Report& flag(std::string key, bool v);
  Report& text(std::string key, std::string v);
};

/// The default enumeration budget, overridden by ENTROPIC_ENERGY_BUDGET.
std::uint64_t default_budget();

struct HegartyReport {
  std::vector<long> set;
  Bits h_x = 0, h_y = 0, h_sum = 0, h_double = 0;
  Bits a_xy = 0, a_x = 0, a_y = 0;
  /// A{X,Y} - (A{X} + A{Y}) / 2
  Bits margin = 0;
  bool violation = false;

  Report to_report() const;
};

/// X uniform on {-7,-5,-4,-3,0,4,5,7}, Y uniform on its negation, independent.
HegartyReport reproduce_hegarty(double tol = kDefaultTolerance);

struct Sidon012Report {
  Bits h_x = 0, h_double = 0, doubling = 0;
  /// s{X} - (H{X} - 1)
  Bits sidon_slack = 0;
  bool sidon_rv = false;
  bool sidon_set = false;

  Report to_report() const;
};

Sidon012Report reproduce_sidon012(double tol = kDefaultTolerance);

struct SubfieldReport {
  long q = 0;
  Bits h_x = 0;
  Bits h_double = 0;
  Bits h_double_closed_form = 0;
  Bits m_x = 0;
  Bits a_x = 0;
  /// Leading terms 2log(q-1) - log(q-2) and 2log(q-1) + log(q-2).
  Bits h_double_leading = 0;
  Bits a_x_leading = 0;
  bool matches_closed_form = false;

  Report to_report() const;
};

/// X uniform on F_q^* for prime q >= 3, sums and products in F_q. Throws
/// NonPrimeQ.
SubfieldReport subfield_example(long q, double tol = kDefaultTolerance);

struct ScanRecord {
  std::string descriptor;
  Bits h = 0;
  Bits a = 0;
  Bits m = 0;
  /// max(A, M) / H, defined when H > 0.
  std::optional<double> ratio;
  std::vector<std::string> flags;

  std::optional<double> epsilon() const;
  Json to_json() const;
};

/// descriptor,H,A,M,ratio,flags with a header row; undefined ratios are empty.
std::string records_to_csv(std::span<const ScanRecord> records);

struct SumproductConfig {
  long p = 11;
  std::size_t max_support = 5;
  enum class Mode { Exhaustive, Random } mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  double delta = 0.1;
  double tol = kDefaultTolerance;
};

struct SumproductResult {
  std::vector<ScanRecord> records;
  double delta = 0;
  std::size_t in_window = 0;
  /// Smallest 3 - max(A, M)/H over records inside the entropy window.
  std::optional<double> min_epsilon_in_window;

  Report summary() const;
};

inline constexpr long kExhaustivePrimeCap = 31;

/// Exhaustive mode scans X uniform on every subset of F_p^* of size at most
/// max_support; random mode draws random rational distributions. Records are
/// sorted by epsilon, then descriptor. Throws InvalidPrime, SupportTooLarge.
SumproductResult sumproduct_scan(const SumproductConfig& config);

struct GkReport {
  long p = 0;
  std::size_t k = 0;
  Bits h_x = 0;
  /// H{X_1X_1' + ... + X_jX_j'} for j = 1..k.
  std::vector<Bits> lhs_by_k;
  Bits lhs = 0;
  Bits rhs = 0;
  Bits slack = 0;

  Report to_report() const;
};

/// lhs = H{X_1X_1' + ... + X_kX_k'}, rhs = min(2H{X}, log p) - 1. Throws
/// InvalidPrime, SpecMismatch when d is not over F_p, BudgetExceeded when
/// support^(2k) exceeds the budget.
GkReport gk_scan(long p, std::size_t k, const Dist& d, std::uint64_t budget = default_budget());

struct CsFinding {
  std::vector<long> set;
  Bits h_sum = 0;   // H{X+X'}
  Bits h_diff = 0;  // H{X-X'}, the law of X+Y for Y uniform on -A
  /// A{X,Y} - (A{X} + A{Y}) / 2 = H{X+X'} - H{X-X'}
  Bits margin = 0;

  Json to_json() const;
};

struct CsSearchResult {
  std::uint64_t examined = 0;
  std::vector<CsFinding> violations;

  Report summary() const;
};

/// Every set of `size` integers in [lo, hi] tested with X uniform on A and Y
/// uniform on -A. Violations sorted by margin, largest first. Throws
/// InvalidConfig for windows outside [-16, 16] or size outside 1..10, and
/// BudgetExceeded when the number of sets exceeds the budget.
CsSearchResult cs_search(long lo, long hi, std::size_t size, std::uint64_t budget = default_budget(),
                         double tol = kDefaultTolerance);

struct RealLineResult {
  std::vector<ScanRecord> records;
  /// Running maximum of the ratio after each record.
  std::vector<std::optional<double>> running_max;
  std::optional<double> max_ratio;
  std::string note;

  Report summary() const;
};

/// Integer-ring distributions for the named families: "arith" (uniform on
/// {1..n}), "geom" (uniform on {1,2,..,2^(n-1)}) for n = 1..max_size, and
/// "random" (trials random distributions on subsets of [1, 16]).
std::vector<Dist> real_line_family(const std::string& family, std::size_t max_size, std::uint64_t seed,
                                   std::size_t trials);

/// max(A{X}, M{X}) / H{X} for each distribution. Throws SpecMismatch for
/// non-integer carriers and BudgetExceeded when the summed squared supports
/// exceed the budget.
RealLineResult real_line_probe(std::span<const Dist> family, std::uint64_t budget = default_budget());

}  // namespace entropic::explorer
