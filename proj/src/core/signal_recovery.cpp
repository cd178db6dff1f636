#include "onoff/core/signal_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "onoff/core/format.hpp"
#include "onoff/error.hpp"

namespace onoff::core {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonempty(const SignalRecoverySequence& seq) {
  require(!seq.nodes.empty(), ErrorCode::DegenerateInput,
          "signal/recovery sequence has an empty node range");
  require(std::isfinite(seq.window) && seq.window >= 0.0, ErrorCode::Precondition,
          "signal/recovery sequence needs a finite window");
}

// Whether node `times` is off just before t: its last event strictly before
// t is a reception (s_0 = 0 counts).
bool off_before(const NodeTimes& times, double t) {
  auto s = std::lower_bound(times.signals.begin(), times.signals.end(), t);
  auto r = std::lower_bound(times.recoveries.begin(), times.recoveries.end(), t);
  const double last_s = s == times.signals.begin() ? -kInf : *std::prev(s);
  const double last_r = r == times.recoveries.begin() ? -kInf : *std::prev(r);
  return last_s >= last_r;
}

}  // namespace

const NodeTimes& SignalRecoverySequence::at(NodeIndex i) const {
  require(i >= left && i <= right(), ErrorCode::DimensionMismatch,
          "node " + std::to_string(i) + " outside sequence range");
  return nodes[static_cast<std::size_t>(i - left)];
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "consistent";
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (std::size_t k = 0; k < violations.size() && k < 5; ++k) {
    const auto& v = violations[k];
    os << "; (" << v.rule << ") node " << v.node << " t=" << format_real(v.time)
       << ": " << v.detail;
  }
  return os.str();
}

SignalRecoverySequence to_signal_recovery(const EventLog& log) {
  const NodeIndex top = log.permanent_input ? log.right - 1 : log.right;
  require(top >= log.left, ErrorCode::DegenerateInput,
          "log has no observable nodes (a lone permanent-input node is the "
          "input source)");
  SignalRecoverySequence seq;
  seq.left = log.left;
  seq.window = log.horizon;
  seq.nodes.resize(static_cast<std::size_t>(top - log.left + 1));
  for (auto& n : seq.nodes) n.signals.push_back(0.0);
  for (const auto& e : log.events) {
    if (e.kind == EventKind::Recovery && e.lo <= top) {
      seq.nodes[static_cast<std::size_t>(e.lo - log.left)].recoveries.push_back(e.time);
    } else if (e.kind == EventKind::Reception) {
      for (NodeIndex i = e.lo; i <= std::min(e.hi, top); ++i) {
        seq.nodes[static_cast<std::size_t>(i - log.left)].signals.push_back(e.time);
      }
    }
  }
  return seq;
}

ValidationReport validate_signal_recovery(const SignalRecoverySequence& seq,
                                          double caveat_band) {
  require_nonempty(seq);
  ValidationReport rep;
  auto add = [&](const char* rule, NodeIndex node, double t, std::string detail) {
    rep.violations.push_back({rule, node, t, std::move(detail)});
  };

  for (NodeIndex i = seq.left; i <= seq.right(); ++i) {
    const NodeTimes& nt = seq.at(i);
    for (const auto* list : {&nt.signals, &nt.recoveries}) {
      for (double t : *list) {
        if (!std::isfinite(t) || t < 0.0 || t > seq.window) {
          add("ii", i, t, "time is not a finite point of the window");
        }
      }
    }
    if (nt.signals.empty() || nt.signals.front() != 0.0) {
      add("i", i, nt.signals.empty() ? 0.0 : nt.signals.front(),
          "sequence must start with s_0 = 0");
      continue;
    }
    const std::size_t ns = nt.signals.size();
    const std::size_t nr = nt.recoveries.size();
    if (nr != ns && nr + 1 != ns) {
      add("i", i, nt.signals.back(),
          "receptions and recoveries do not alternate (" + std::to_string(ns) +
              " signals, " + std::to_string(nr) + " recoveries)");
    }
    // Merge as s_0, r_1, s_1, r_2, ... and demand a strictly increasing chain.
    double prev = nt.signals[0];
    for (std::size_t k = 1; k <= nr; ++k) {
      const double r = nt.recoveries[k - 1];
      if (!(r > prev)) add("i", i, r, "r_" + std::to_string(k) + " does not exceed the previous time");
      prev = r;
      if (k < ns) {
        const double s = nt.signals[k];
        if (!(s > prev)) add("i", i, s, "s_" + std::to_string(k) + " does not exceed r_" + std::to_string(k));
        prev = s;
      }
    }
  }

  for (NodeIndex i = seq.left; i < seq.right(); ++i) {
    const NodeTimes& lower = seq.at(i);
    const NodeTimes& upper = seq.at(i + 1);
    std::vector<double> upper_sorted = upper.signals;
    std::sort(upper_sorted.begin(), upper_sorted.end());
    std::vector<double> lower_sorted = lower.signals;
    std::sort(lower_sorted.begin(), lower_sorted.end());
    for (double s : lower.signals) {
      if (!std::binary_search(upper_sorted.begin(), upper_sorted.end(), s)) {
        add("iiia", i, s, "reception at node " + std::to_string(i) +
                              " missing from node " + std::to_string(i + 1));
      }
    }
    for (double s : upper.signals) {
      if (s == 0.0 || std::binary_search(lower_sorted.begin(), lower_sorted.end(), s)) {
        continue;
      }
      if (s > seq.window - caveat_band) continue;
      if (!off_before(lower, s)) {
        add("iiib", i, s, "signal at node " + std::to_string(i + 1) +
                              " stopped although node " + std::to_string(i) +
                              " was on");
      }
    }
  }
  return rep;
}

int OnOffTrajectory::value(NodeIndex i, double t) const {
  require(i >= left && i <= right(), ErrorCode::DimensionMismatch, "node outside trajectory");
  const auto& ivs = nodes[static_cast<std::size_t>(i - left)];
  auto it = std::upper_bound(ivs.begin(), ivs.end(), t,
                             [](double x, const OnInterval& iv) { return x < iv.start; });
  if (it == ivs.begin()) return 0;
  const OnInterval& iv = *std::prev(it);
  return (iv.censored || t < iv.end) ? 1 : 0;
}

int OnOffTrajectory::left_limit(NodeIndex i, double t) const {
  require(i >= left && i <= right(), ErrorCode::DimensionMismatch, "node outside trajectory");
  const auto& ivs = nodes[static_cast<std::size_t>(i - left)];
  // Intervals are sorted; find the last one starting strictly before t.
  auto it = std::lower_bound(ivs.begin(), ivs.end(), t,
                             [](const OnInterval& iv, double x) { return iv.start < x; });
  if (it == ivs.begin()) return 0;
  const OnInterval& iv = *std::prev(it);
  return (iv.censored || t <= iv.end) ? 1 : 0;
}

OnOffTrajectory to_on_off(const SignalRecoverySequence& seq) {
  const ValidationReport rep = validate_signal_recovery(seq);
  require(rep.consistent(), ErrorCode::ContractViolation,
          "cannot convert an invalid signal/recovery sequence: " + rep.summary());
  OnOffTrajectory traj;
  traj.left = seq.left;
  traj.window = seq.window;
  traj.nodes.resize(seq.nodes.size());
  for (std::size_t n = 0; n < seq.nodes.size(); ++n) {
    const NodeTimes& nt = seq.nodes[n];
    for (std::size_t k = 0; k < nt.recoveries.size(); ++k) {
      const bool closed = k + 1 < nt.signals.size();
      traj.nodes[n].push_back(
          {nt.recoveries[k], closed ? nt.signals[k + 1] : seq.window, !closed});
    }
  }
  return traj;
}

SignalRecoverySequence switch_times(const OnOffTrajectory& traj) {
  SignalRecoverySequence seq;
  seq.left = traj.left;
  seq.window = traj.window;
  seq.nodes.resize(traj.nodes.size());
  for (std::size_t n = 0; n < traj.nodes.size(); ++n) {
    NodeTimes& nt = seq.nodes[n];
    nt.signals.push_back(0.0);
    for (const auto& iv : traj.nodes[n]) {
      nt.recoveries.push_back(iv.start);
      if (!iv.censored) nt.signals.push_back(iv.end);
    }
  }
  return seq;
}

PropertyReport check_dynamics_properties(const OnOffTrajectory& traj,
                                         const SignalRecoverySequence& seq,
                                         std::size_t density_bins) {
  require(traj.left == seq.left && traj.nodes.size() == seq.nodes.size() &&
              traj.window == seq.window,
          ErrorCode::DimensionMismatch,
          "trajectory and sequence cover different nodes or windows");
  require(!traj.nodes.empty(), ErrorCode::DegenerateInput, "empty node range");
  PropertyReport rep;
  auto add = [&](const char* rule, NodeIndex node, double t, std::string detail) {
    rep.violations.push_back({rule, node, t, std::move(detail)});
  };

  for (NodeIndex i = traj.left; i <= traj.right(); ++i) {
    const auto& ivs = traj.nodes[static_cast<std::size_t>(i - traj.left)];
    double prev_end = 0.0;
    for (std::size_t k = 0; k < ivs.size(); ++k) {
      const OnInterval& iv = ivs[k];
      const bool shape_ok = iv.censored ? (iv.start <= iv.end) : (iv.start < iv.end);
      if (!shape_ok || iv.end > traj.window) {
        add("a", i, iv.start, "on-interval is empty, reversed or leaves the window");
      }
      if (!(iv.start > prev_end)) {
        add("a", i, iv.start,
            k == 0 ? "node is on at time 0" : "on-intervals overlap or touch");
      }
      if (iv.censored && k + 1 != ivs.size()) {
        add("a", i, iv.start, "censored on-interval is not the last one");
      }
      prev_end = iv.end;
    }
  }

  for (NodeIndex k = traj.left; k <= traj.right(); ++k) {
    for (const auto& iv : traj.nodes[static_cast<std::size_t>(k - traj.left)]) {
      if (iv.censored) continue;
      const double t = iv.end;  // omega_k(t-) = 1, omega_k(t) = 0
      for (NodeIndex l = k + 1; l <= traj.right(); ++l) {
        if (traj.left_limit(l, t) == 0) {
          add("persistence", k, t,
              "node switched off while node " + std::to_string(l) + " was off at t-");
          break;
        }
      }
      if (k > traj.left && traj.left_limit(k - 1, t) == 1 && traj.value(k - 1, t) == 1) {
        add("suffix", k, t,
            "reception stopped at node " + std::to_string(k) + " although node " +
                std::to_string(k - 1) + " was on");
      }
    }
  }

  std::set<double> times;
  for (const auto& nt : seq.nodes) {
    for (std::size_t k = 1; k < nt.signals.size(); ++k) times.insert(nt.signals[k]);
  }
  DensityDiagnostics& d = rep.density;
  d.reception_count = times.size();
  const std::size_t bins = std::max<std::size_t>(density_bins, 1);
  d.bin_width = seq.window / static_cast<double>(bins);
  d.bin_counts.assign(bins, 0);
  double prev = 0.0;
  d.min_gap = kInf;
  d.max_gap = 0.0;
  for (double t : times) {
    if (d.bin_width > 0.0) {
      auto b = static_cast<std::size_t>(t / d.bin_width);
      ++d.bin_counts[std::min(b, bins - 1)];
    }
    d.min_gap = std::min(d.min_gap, t - prev);
    d.max_gap = std::max(d.max_gap, t - prev);
    prev = t;
  }
  d.min_gap = std::min(d.min_gap, seq.window - prev);
  d.max_gap = std::max(d.max_gap, seq.window - prev);
  return rep;
}

std::vector<double> off_durations(const SignalRecoverySequence& seq, NodeIndex i) {
  const NodeTimes& nt = seq.at(i);
  std::vector<double> out;
  for (std::size_t k = 0; k < nt.recoveries.size() && k < nt.signals.size(); ++k) {
    out.push_back(nt.recoveries[k] - nt.signals[k]);
  }
  return out;
}

std::vector<double> interreception_gaps(const SignalRecoverySequence& seq,
                                        NodeIndex i) {
  const NodeTimes& nt = seq.at(i);
  std::vector<double> out;
  for (std::size_t k = 1; k < nt.signals.size(); ++k) {
    out.push_back(nt.signals[k] - nt.signals[k - 1]);
  }
  return out;
}

void write_csv(std::ostream& os, const SignalRecoverySequence& seq) {
  os << "# left=" << seq.left << "\n"
     << "# right=" << seq.right() << "\n"
     << "# window=" << format_real(seq.window) << "\n"
     << "kind,time,node_lo,node_hi\n";
  for (NodeIndex i = seq.left; i <= seq.right(); ++i) {
    const NodeTimes& nt = seq.at(i);
    std::size_t a = 0, b = 0;
    while (a < nt.signals.size() || b < nt.recoveries.size()) {
      const bool take_signal =
          b >= nt.recoveries.size() ||
          (a < nt.signals.size() && nt.signals[a] <= nt.recoveries[b]);
      if (take_signal) {
        os << "signal," << format_real(nt.signals[a++]) << ',' << i << ',' << i << '\n';
      } else {
        os << "recovery," << format_real(nt.recoveries[b++]) << ',' << i << ',' << i << '\n';
      }
    }
  }
}

}  // namespace onoff::core
