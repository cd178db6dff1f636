#pragma once

#include <cstdint>
#include <vector>

#include "onoff/core/input_model.hpp"
#include "onoff/core/rate_schedule.hpp"
#include "onoff/sim/philox.hpp"

namespace onoff::sim {

/// Master seed plus replication number. Every random quantity of a run is a
/// pure function of this pair and the configuration.
///
/// Substream layout (Philox key / counter):
///   node i potential recoveries: key (seed, 2<<56 | i), counter (rep, block, batch, 0)
///   input intervals:             key (seed, 1<<56),     counter (rep, 0, batch, 0)
/// Node indices are tagged separately from the input so that node 0 is usable.
struct RandomnessPlan {
  std::uint64_t master_seed = 0;
  std::uint64_t replication = 0;

  RandomnessPlan with_replication(std::uint64_t r) const { return {master_seed, r}; }
};

/// Sequential uniforms from one (key, counter prefix) substream.
class UniformStream {
 public:
  UniformStream(const RandomnessPlan& plan, std::uint64_t tag, std::uint64_t block);

  double next();

 private:
  Philox4x64::Key key_;
  Philox4x64::Counter ctr_;
  Philox4x64::Counter out_{};
  int used_ = 4;
};

/// Poisson process of potential recovery points of one node. Time is cut into
/// blocks of length 1/rate and each block is generated from its own counter,
/// so skipping ahead costs O(1) and the points never depend on how the run
/// consumed them.
class PotentialRecoveryStream {
 public:
  PotentialRecoveryStream(const RandomnessPlan& plan, NodeIndex node, double rate);

  /// Smallest potential point strictly greater than t. Calls must use
  /// nondecreasing t.
  double next_after(double t);

  /// All points in [0, horizon], from a fresh pass over the stream.
  std::vector<double> points_until(double horizon) const;

 private:
  void load_block(std::int64_t block);

  RandomnessPlan plan_;
  NodeIndex node_;
  double rate_;
  double block_len_;
  std::int64_t block_ = -1;
  std::vector<double> points_;
  std::size_t pos_ = 0;
};

/// Renewal sequence of input times driven by uniforms through the input
/// law's quantile map.
class InputStream {
 public:
  InputStream(const RandomnessPlan& plan, const core::InputModel& model);

  double next_interval() { return model_.quantile(uniforms_.next()); }

 private:
  core::InputModel model_;
  UniformStream uniforms_;
};

std::uint64_t node_tag(NodeIndex node);
std::uint64_t input_tag();

/// Seed for an independent experiment keyed by `salt` (ladder points etc.).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace onoff::sim
