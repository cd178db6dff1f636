#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace onoff::frozen {

/// Distinct positive times t_1, t_2, ... tending to 0, with a certificate
/// N(eps) such that t_j < eps for every j >= N(eps).
class FrozenInstance {
 public:
  enum class Kind { Geometric, Harmonic, ExplicitPrefix };

  /// t_i = r^i, 0 < r < 1.
  static FrozenInstance geometric(double r);
  /// t_i = 1 / (i + 1).
  static FrozenInstance harmonic();
  /// t_i = prefix[i-1] for i <= P, then min(prefix) * ratio^(i-P). The prefix
  /// need not be monotone; duplicate values are rejected.
  static FrozenInstance explicit_prefix(std::vector<double> prefix, double tail_ratio = 0.5);

  Kind kind() const { return kind_; }
  double t(std::int64_t i) const;
  /// Smallest N with t_j < eps for all j >= N.
  std::int64_t certificate(double eps) const;
  std::string describe() const;

 private:
  FrozenInstance(Kind kind, double r, std::vector<double> prefix);

  Kind kind_;
  double r_;
  std::vector<double> prefix_;
  double prefix_min_ = 0.0;
};

enum class Tail { AllBlocked, AllUnblocked };

const char* to_string(Tail tail);

/// Finite description of a blocked set: B0 inside {1..m} plus the tail rule
/// for indices beyond m. Bit i-1 of `described` is index i.
struct BlockedCandidate {
  std::uint32_t described = 0;
  int m = 0;
  Tail tail = Tail::AllUnblocked;

  bool blocked(std::int64_t i) const;
  /// "{1;3}" style list of B0.
  std::string describe_set() const;
};

/// Forcing rule at index i: i must be blocked iff every j > i is unblocked
/// and has t_j < t_i.
struct RuleEvaluation {
  bool forced_blocked = false;
  /// Index j > i that breaks the rule's right-hand side, if any.
  std::optional<std::int64_t> witness;
  std::string reason;
};

/// Maximum number of indices examined for one quantifier before giving up.
inline constexpr std::int64_t kFrozenScanCap = 10'000'000;

RuleEvaluation evaluate_rule(const FrozenInstance& inst, const BlockedCandidate& cand,
                             std::int64_t i);

struct Verdict {
  bool consistent = false;
  std::int64_t index = 0;  // smallest violating index when inconsistent
  std::string reason;
};

/// Decides the rule at every index, using the tail flag and the instance
/// certificate beyond m, and reports the smallest violation. Throws
/// Undecidable when a quantifier needs more than kFrozenScanCap indices.
Verdict frozen_consistency(const FrozenInstance& inst, const BlockedCandidate& cand);

inline constexpr int kFrozenSearchMaxM = 20;

struct SearchRow {
  BlockedCandidate candidate;
  Verdict verdict;
};

struct ExhaustionReport {
  std::vector<SearchRow> rows;
  std::size_t consistent_count = 0;
  bool all_violated() const { return consistent_count == 0; }
};

/// Every candidate with B0 inside {1..m} and either tail flag: 2^(m+1) runs.
ExhaustionReport frozen_search(const FrozenInstance& inst, int m);

/// `candidate,tail,verdict,witness_index,reason` rows.
void write_csv(std::ostream& os, const ExhaustionReport& report);

}  // namespace onoff::frozen
