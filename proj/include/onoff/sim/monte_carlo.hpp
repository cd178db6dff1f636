#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "onoff/core/event_log.hpp"
#include "onoff/core/system_config.hpp"
#include "onoff/sim/empirical.hpp"
#include "onoff/sim/simulator.hpp"

namespace onoff::sim {

/// Called once per simulated replication; must be safe to call concurrently.
using LogAudit = std::function<void(const core::EventLog&)>;

struct MonteCarloOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  LogAudit audit;
  SimulateOptions simulate;
};

/// Runs body(r) for r in [0, reps) on a small thread pool and returns the
/// results indexed by r. The output does not depend on the thread count.
template <class T, class Body>
std::vector<T> run_replications(std::uint64_t reps, unsigned threads, Body body) {
  std::vector<T> out(reps);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(reps, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    constexpr std::uint64_t kChunk = 64;
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= reps) return;
      const std::uint64_t end = std::min(reps, begin + kChunk);
      try {
        for (std::uint64_t r = begin; r < end; ++r) out[r] = body(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(reps);
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// First reception time S_1 at `node`, one sample per replication.
EmpiricalDistribution sample_first_reception(const core::SystemConfig& config,
                                             NodeIndex node, std::uint64_t reps,
                                             std::uint64_t seed,
                                             const MonteCarloOptions& options = {});

/// First input time, i.e. the first "reception" of a system without nodes.
EmpiricalDistribution sample_first_input(const core::InputModel& input,
                                         std::uint64_t reps, std::uint64_t seed);

struct InterreceptionSample {
  EmpiricalDistribution gaps;
  /// Gaps in the order they occurred.
  std::vector<double> ordered;
  bool complete = true;
  std::string warning;
};

/// Consecutive reception gaps at `node` from one long run (replication 0),
/// which form a renewal sequence. When the cap is hit first, the partial
/// sample is returned with complete == false and a warning.
InterreceptionSample sample_interreception(
    const core::SystemConfig& config, NodeIndex node, std::uint64_t gap_count,
    std::uint64_t seed, double time_cap = std::numeric_limits<double>::infinity(),
    const MonteCarloOptions& options = {});

/// Indicator samples (0 or 1) of "node receives a signal in (t0, t1)".
EmpiricalDistribution sample_reception_in_interval(const core::SystemConfig& config,
                                                   NodeIndex node, double t0, double t1,
                                                   std::uint64_t reps, std::uint64_t seed,
                                                   const MonteCarloOptions& options = {});

/// Runs two systems that differ only in their input law on the same
/// potential-recovery streams and the same input uniforms.
std::pair<core::EventLog, core::EventLog> coupled_compare(
    const core::SystemConfig& a, const core::SystemConfig& b, std::uint64_t seed,
    const StopRule& stop, std::uint64_t replication = 0);

}  // namespace onoff::sim
