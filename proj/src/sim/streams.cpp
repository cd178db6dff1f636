#include "onoff/sim/streams.hpp"

#include <cmath>

#include "onoff/error.hpp"

namespace onoff::sim {

namespace {

constexpr std::uint64_t kIndexMask = (std::uint64_t{1} << 56) - 1;

}  // namespace

std::uint64_t node_tag(NodeIndex node) {
  require(node >= 0 && static_cast<std::uint64_t>(node) <= kIndexMask,
          ErrorCode::InvalidArgument, "node index out of stream range");
  return (std::uint64_t{2} << 56) | static_cast<std::uint64_t>(node);
}

std::uint64_t input_tag() { return std::uint64_t{1} << 56; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  const auto out = Philox4x64::apply({salt, 0, 0, 0}, {seed, std::uint64_t{3} << 56});
  return out[0];
}

UniformStream::UniformStream(const RandomnessPlan& plan, std::uint64_t tag,
                             std::uint64_t block)
    : key_{plan.master_seed, tag}, ctr_{plan.replication, block, 0, 0} {}

double UniformStream::next() {
  if (used_ == 4) {
    out_ = Philox4x64::apply(ctr_, key_);
    ++ctr_[2];
    used_ = 0;
  }
  return to_open_unit(out_[used_++]);
}

PotentialRecoveryStream::PotentialRecoveryStream(const RandomnessPlan& plan,
                                                 NodeIndex node, double rate)
    : plan_(plan), node_(node), rate_(rate), block_len_(1.0 / rate) {
  require(std::isfinite(rate) && rate > 0.0, ErrorCode::InvalidArgument,
          "potential recovery stream needs a positive rate");
  node_tag(node);  // validates the index
}

void PotentialRecoveryStream::load_block(std::int64_t block) {
  require(block >= 0 && block < (std::int64_t{1} << 52), ErrorCode::Precondition,
          "simulation time exceeds the stream block range");
  block_ = block;
  points_.clear();
  pos_ = 0;
  UniformStream u(plan_, node_tag(node_), static_cast<std::uint64_t>(block));
  const double lo = static_cast<double>(block) * block_len_;
  const double hi = static_cast<double>(block + 1) * block_len_;
  double x = lo;
  for (;;) {
    x += -std::log(u.next()) / rate_;
    if (x >= hi) break;
    points_.push_back(x);
  }
}

double PotentialRecoveryStream::next_after(double t) {
  // Start one block early: floor(t / len) can overshoot by rounding.
  const auto guess = static_cast<std::int64_t>(std::floor(t / block_len_)) - 1;
  if (guess > block_) load_block(guess);
  if (block_ < 0) load_block(0);
  for (;;) {
    while (pos_ < points_.size() && points_[pos_] <= t) ++pos_;
    if (pos_ < points_.size()) return points_[pos_];
    load_block(block_ + 1);
  }
}

std::vector<double> PotentialRecoveryStream::points_until(double horizon) const {
  PotentialRecoveryStream fresh(plan_, node_, rate_);
  std::vector<double> out;
  double t = 0.0;
  for (;;) {
    const double p = fresh.next_after(t);
    if (p > horizon) break;
    out.push_back(p);
    t = p;
  }
  return out;
}

InputStream::InputStream(const RandomnessPlan& plan, const core::InputModel& model)
    : model_(model), uniforms_(plan, input_tag(), 0) {
  require(!model.is_permanent(), ErrorCode::MustReduce,
          "permanent input has no interval stream");
}

}  // namespace onoff::sim
