#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace onoff::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exact small-n means, transform identities, validator suite (including
/// tampered sequences that must be rejected), certificate spot values and
/// the frozen refutation. `quick` skips the Monte Carlo checks.
std::vector<CheckResult> run_property_suite(bool quick, std::uint64_t seed);

}  // namespace onoff::cli
