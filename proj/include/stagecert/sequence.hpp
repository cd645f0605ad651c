#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stagecert/numeric.hpp"

namespace stagecert {

/// How a_i is obtained for indices past the explicit prefix.
enum class TailPolicy {
  None,    // unknown: e-generator weights past the prefix are unavailable
  Linear,  // a_i = a_m + (i - m) where a_m is the last explicit entry
};

TailPolicy parse_tail_policy(const std::string& s);
const char* to_string(TailPolicy t);

/// Strictly increasing sequence a_1 < a_2 < ..., a_0 = 1.
/// Entries are exact integers up to some point, then optional log2 enclosures.
class GrowthSequence {
 public:
  GrowthSequence() = default;
  GrowthSequence(std::vector<BigInt> exact, std::vector<LogMagnitude> log_tail = {},
                 TailPolicy tail = TailPolicy::Linear, std::string name = "");

  static GrowthSequence preset(const std::string& name);
  static std::vector<std::string> preset_names();

  const std::string& name() const { return name_; }
  TailPolicy tail() const { return tail_; }
  const std::vector<BigInt>& exact_entries() const { return exact_; }
  const std::vector<LogMagnitude>& log_entries() const { return log_tail_; }

  std::size_t materialized() const { return exact_.size(); }
  std::size_t known() const { return exact_.size() + log_tail_.size(); }
  bool is_exact(std::size_t i) const { return i <= exact_.size(); }
  bool is_known(std::size_t i) const { return i <= known(); }

  /// exact a_i, with a_0 = 1; throws Unavailable when not materialized
  const BigInt& at(std::size_t i) const;
  /// a_i as a magnitude (exact when materialized)
  Magnitude magnitude(std::size_t i) const;
  /// certified bounds on log2 a_i
  LogMagnitude log2_of(std::size_t i) const;

  /// a_i for an arbitrary (possibly huge) index, following the tail policy
  std::optional<BigInt> weight(const BigInt& i) const;

  /// xi_n = sum_{i <= n} a_i^2 (exact entries only)
  BigInt xi(std::size_t n) const;
  Magnitude xi_magnitude(std::size_t n) const;

  /// stage n >= 1 lives on the coordinates a_n < j <= a_{n+1}
  bool stage_buildable(std::size_t n) const { return n >= 1 && n + 1 <= exact_.size(); }
  BigInt stage_lo(std::size_t n) const { return at(n); }
  BigInt stage_hi(std::size_t n) const { return at(n + 1); }
  BigInt stage_dimension(std::size_t n) const { return at(n + 1) - at(n); }
  /// largest buildable stage, 0 if none
  std::size_t max_stage() const { return exact_.size() >= 2 ? exact_.size() - 1 : 0; }

  std::string describe() const;

 private:
  std::vector<BigInt> exact_;
  std::vector<LogMagnitude> log_tail_;
  TailPolicy tail_ = TailPolicy::Linear;
  std::string name_;
};

struct LambdaSet {
  std::size_t n = 0;
  std::vector<BigInt> elements;  // sorted, distinct
  BigInt xi;
  BigInt tuple_count;  // prod (a_i + 1)
  bool distinct() const { return BigInt(static_cast<unsigned long>(elements.size())) == tuple_count; }
};

/// {sum t_i a_i : 0 <= t_i <= a_i, i <= n}
LambdaSet lambda_set(const GrowthSequence& a, std::size_t n, std::size_t cap = 1u << 22);

enum class Verdict { Holds, Fails, Undecidable };
const char* to_string(Verdict v);

struct LexResult {
  Verdict verdict = Verdict::Holds;
  std::vector<long> witness;  // violating (t_1, ..., t_r) when Fails
  std::string method;         // "brute-force" or "gap"
};

/// sign(sum t_i a_i) == sign(t_r) for all |t_i| <= 2 a_i, r = last nonzero index.
LexResult is_lexicographic(const GrowthSequence& a, std::size_t n,
                           std::size_t brute_force_cap = 10'000'000);
/// Same question answered through a_r > 2 xi_{r-1} for r <= n.
Verdict lexicographic_by_gap(const GrowthSequence& a, std::size_t n);

/// Decomposition of m as sum t_i a_i (t_i <= a_i) by greedy descent, if m is in Lambda_n.
std::optional<std::vector<BigInt>> lambda_decompose(const GrowthSequence& a, std::size_t n,
                                                    const BigInt& m);

// ---------------------------------------------------------------- registry

struct ConditionResult {
  std::string id;
  std::string group;        // verify target this clause serves: nm21, le, 6.4, 7.2, 8.1, ...
  std::string statement;    // the inequality, in plain text
  std::size_t index = 0;    // stage / sequence index at which it was evaluated
  Verdict verdict = Verdict::Undecidable;
  std::string witness;      // values that violate it (fails) or the reason (undecidable)
  std::vector<std::size_t> reads;  // sequence indices read; block-indexed weights excluded
  bool reads_block = false;        // reads a_i for i inside a stage block
  bool derived = false;            // explicit sufficient form chosen by the implementation
  bool gating = true;              // counts toward the exit status
  long cost = 0;                   // deterministic work count
};

struct ConditionReport {
  std::vector<ConditionResult> results;
  bool any_fails() const;
  bool any_undecidable() const;
  std::vector<const ConditionResult*> find(const std::string& id) const;
};

struct ConditionInfo {
  std::string id, group, statement;
  bool derived, gating;
};
const std::vector<ConditionInfo>& condition_registry();

ConditionReport check_growth_conditions(const GrowthSequence& a, std::size_t n_max);

/// sum_{i < a} (j/(j+1))^{2i} (1 - i/a)^2, exact for moderate a, else a lower bound
struct LeFactor {
  Rational value;
  bool exact;
};
LeFactor le_factor(std::size_t j, const BigInt& a);

/// prod_{j <= n} (j+1)^2 / (2j+1)
Rational le_product_target(std::size_t n);

}  // namespace stagecert
