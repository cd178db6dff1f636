#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace onoff::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitPropertyFailure = 3 };

/// Fully resolved invocation. Every output file echoes it in its header, and
/// the same RunConfig always reproduces the same bytes.
struct RunConfig {
  std::string command;
  std::string rates;
  std::string input = "permanent";
  std::int64_t left = 1;
  std::int64_t nodes = 0;  // 0: length of an explicit schedule
  std::int64_t node = 0;   // observed node; 0 means `left`
  std::int64_t n = 0;
  std::int64_t k = 1;
  std::vector<std::int64_t> ladder;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  std::string mode;
  std::vector<double> s_grid;
  std::vector<double> t_grid;
  double horizon = 10.0;
  double interval = 1.0;
  std::uint64_t gaps = 1000;
  std::optional<long> precision_bits;
  int digits = 30;
  std::string instance;
  int max_index = 10;
  bool quick = false;
  unsigned threads = 0;
  std::string output;  // empty: stdout
};

/// Parses argv (program name first). Usage errors throw onoff::Error with
/// code Parse; --help text is returned through `help` with no config.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::string* help);

/// Runs a parsed config, writing the artifact to config.output or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping; what the executable calls.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace onoff::cli
