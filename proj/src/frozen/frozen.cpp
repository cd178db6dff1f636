#include "onoff/frozen/frozen.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "onoff/core/format.hpp"
#include "onoff/error.hpp"

namespace onoff::frozen {

FrozenInstance::FrozenInstance(Kind kind, double r, std::vector<double> prefix)
    : kind_(kind), r_(r), prefix_(std::move(prefix)) {
  if (!prefix_.empty()) prefix_min_ = *std::min_element(prefix_.begin(), prefix_.end());
}

FrozenInstance FrozenInstance::geometric(double r) {
  require(std::isfinite(r) && r > 0.0 && r < 1.0, ErrorCode::InvalidArgument,
          "geometric ratio must lie in (0, 1)");
  return FrozenInstance(Kind::Geometric, r, {});
}

FrozenInstance FrozenInstance::harmonic() { return FrozenInstance(Kind::Harmonic, 0.0, {}); }

FrozenInstance FrozenInstance::explicit_prefix(std::vector<double> prefix, double tail_ratio) {
  require(!prefix.empty(), ErrorCode::InvalidArgument, "explicit prefix must not be empty");
  require(std::isfinite(tail_ratio) && tail_ratio > 0.0 && tail_ratio < 1.0,
          ErrorCode::InvalidArgument, "tail ratio must lie in (0, 1)");
  for (double v : prefix) {
    require(std::isfinite(v) && v > 0.0, ErrorCode::InvalidArgument,
            "frozen times must be finite and positive");
  }
  std::vector<double> sorted = prefix;
  std::sort(sorted.begin(), sorted.end());
  // The rule reads omega_j at t_i-, which is ambiguous when t_j == t_i.
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          ErrorCode::InvalidArgument, "frozen times must be distinct");
  return FrozenInstance(Kind::ExplicitPrefix, tail_ratio, std::move(prefix));
}

double FrozenInstance::t(std::int64_t i) const {
  require(i >= 1, ErrorCode::InvalidArgument, "frozen index must be >= 1");
  switch (kind_) {
    case Kind::Geometric:
      return std::pow(r_, static_cast<double>(i));
    case Kind::Harmonic:
      return 1.0 / static_cast<double>(i + 1);
    case Kind::ExplicitPrefix: {
      const auto p = static_cast<std::int64_t>(prefix_.size());
      if (i <= p) return prefix_[static_cast<std::size_t>(i - 1)];
      return prefix_min_ * std::pow(r_, static_cast<double>(i - p));
    }
  }
  return 0.0;
}

std::int64_t FrozenInstance::certificate(double eps) const {
  require(eps > 0.0, ErrorCode::InvalidArgument, "certificate needs eps > 0");
  // Start from the analytic guess, then settle it against t() itself so the
  // certificate agrees with the values the checker compares.
  auto settle = [&](std::int64_t lo_bound, std::int64_t guess) {
    std::int64_t n = std::max(lo_bound, guess);
    while (t(n) >= eps) ++n;
    while (n > lo_bound && t(n - 1) < eps) --n;
    return n;
  };
  switch (kind_) {
    case Kind::Geometric: {
      const double g = std::floor(std::log(eps) / std::log(r_));
      return settle(1, static_cast<std::int64_t>(std::clamp(g, 1.0, 4e18)));
    }
    case Kind::Harmonic: {
      const double g = std::floor(1.0 / eps - 1.0);
      return settle(1, static_cast<std::int64_t>(std::clamp(g, 1.0, 4e18)));
    }
    case Kind::ExplicitPrefix: {
      const auto p = static_cast<std::int64_t>(prefix_.size());
      std::int64_t last_big = 0;
      for (std::int64_t i = 1; i <= p; ++i) {
        if (t(i) >= eps) last_big = i;
      }
      const double g = std::floor(std::log(eps / prefix_min_) / std::log(r_));
      const std::int64_t tail_n =
          settle(p + 1, p + static_cast<std::int64_t>(std::clamp(g, 1.0, 4e18)));
      return std::max(last_big + 1, tail_n);
    }
  }
  return 1;
}

std::string FrozenInstance::describe() const {
  switch (kind_) {
    case Kind::Geometric:
      return "geometric:" + core::format_real(r_);
    case Kind::Harmonic:
      return "harmonic";
    case Kind::ExplicitPrefix: {
      std::string s = "explicit:";
      for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) s += ',';
        s += core::format_real(prefix_[i]);
      }
      return s;
    }
  }
  return "unknown";
}

const char* to_string(Tail tail) {
  return tail == Tail::AllBlocked ? "all_blocked" : "all_unblocked";
}

bool BlockedCandidate::blocked(std::int64_t i) const {
  if (i <= m) return (described >> (i - 1)) & 1u;
  return tail == Tail::AllBlocked;
}

std::string BlockedCandidate::describe_set() const {
  std::string s = "{";
  bool first = true;
  for (int i = 1; i <= m; ++i) {
    if (!blocked(i)) continue;
    if (!first) s += ';';
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

RuleEvaluation evaluate_rule(const FrozenInstance& inst, const BlockedCandidate& cand,
                             std::int64_t i) {
  require(i >= 1, ErrorCode::InvalidArgument, "index must be >= 1");
  const double ti = inst.t(i);
  // Beyond max(m, N(t_i)) every j is governed by the tail flag and has t_j < t_i.
  const std::int64_t horizon = std::max<std::int64_t>(cand.m, inst.certificate(ti) - 1);
  if (horizon - i > kFrozenScanCap) {
    fail(ErrorCode::Undecidable,
         "deciding index " + std::to_string(i) + " needs " + std::to_string(horizon - i) +
             " evaluations; certificate too weak for the scan cap");
  }
  RuleEvaluation out;
  for (std::int64_t j = i + 1; j <= horizon + 1; ++j) {
    if (cand.blocked(j)) {
      out.witness = j;
      out.reason = "index " + std::to_string(j) + " > " + std::to_string(i) + " is blocked";
      return out;
    }
    if (inst.t(j) > ti) {
      out.witness = j;
      out.reason = "t_" + std::to_string(j) + " > t_" + std::to_string(i);
      return out;
    }
  }
  out.forced_blocked = true;
  out.reason = "every j > " + std::to_string(i) + " is unblocked with t_j < t_" +
               std::to_string(i);
  return out;
}

namespace {

Verdict violation(std::int64_t i, bool blocked, const RuleEvaluation& rule) {
  Verdict v;
  v.index = i;
  v.reason = blocked ? "blocked but " + rule.reason
                     : "unblocked but " + rule.reason + " so it must be blocked";
  return v;
}

}  // namespace

Verdict frozen_consistency(const FrozenInstance& inst, const BlockedCandidate& cand) {
  require(cand.m >= 0 && cand.m <= 32, ErrorCode::InvalidArgument,
          "candidate prefix length must lie in [0, 32]");
  for (std::int64_t i = 1; i <= cand.m; ++i) {
    const bool blocked = cand.blocked(i);
    const RuleEvaluation rule = evaluate_rule(inst, cand, i);
    if (blocked != rule.forced_blocked) return violation(i, blocked, rule);
  }

  const std::int64_t first_tail = cand.m + 1;
  if (cand.tail == Tail::AllBlocked) {
    // Blocked, yet its right neighbour is blocked too.
    return violation(first_tail, true, evaluate_rule(inst, cand, first_tail));
  }

  // All unblocked beyond m: index i > m is violated iff t_i exceeds every
  // later value, and the first such index is the first argmax of the tail.
  std::int64_t best = first_tail;
  double best_t = inst.t(best);
  std::int64_t stop = inst.certificate(best_t);
  for (std::int64_t j = first_tail + 1; j < stop; ++j) {
    if (j - first_tail > kFrozenScanCap) {
      fail(ErrorCode::Undecidable, "tail maximum beyond index " + std::to_string(cand.m) +
                                       " not located within the scan cap");
    }
    const double tj = inst.t(j);
    if (tj > best_t) {
      best = j;
      best_t = tj;
      stop = inst.certificate(best_t);
    }
  }
  const RuleEvaluation rule = evaluate_rule(inst, cand, best);
  if (!rule.forced_blocked) {
    fail(ErrorCode::ContractViolation,
         "tail maximum at " + std::to_string(best) + " is not forced: " + rule.reason);
  }
  return violation(best, false, rule);
}

ExhaustionReport frozen_search(const FrozenInstance& inst, int m) {
  require(m >= 0 && m <= kFrozenSearchMaxM, ErrorCode::ComplexityGuard,
          "frozen search needs 0 <= m <= " + std::to_string(kFrozenSearchMaxM));
  ExhaustionReport report;
  const std::uint32_t count = std::uint32_t{1} << m;
  report.rows.reserve(2 * static_cast<std::size_t>(count));
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    for (Tail tail : {Tail::AllBlocked, Tail::AllUnblocked}) {
      BlockedCandidate cand{mask, m, tail};
      Verdict verdict = frozen_consistency(inst, cand);
      if (verdict.consistent) ++report.consistent_count;
      report.rows.push_back({cand, std::move(verdict)});
    }
  }
  return report;
}

void write_csv(std::ostream& os, const ExhaustionReport& report) {
  os << "candidate,tail,verdict,witness_index,reason\n";
  for (const auto& row : report.rows) {
    os << row.candidate.describe_set() << ',' << to_string(row.candidate.tail) << ','
       << (row.verdict.consistent ? "consistent" : "violated") << ',';
    if (!row.verdict.consistent) os << row.verdict.index;
    os << ",\"" << row.verdict.reason << "\"\n";
  }
}

}  // namespace onoff::frozen
