#include "onoff/cli/spec_parse.hpp"

#include <charconv>
#include <fstream>

#include "onoff/core/format.hpp"
#include "onoff/error.hpp"

namespace onoff::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Splits "head:rest" and reports the offending token on failure.
std::pair<std::string_view, std::string_view> head_rest(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) return {spec, {}};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

double real_token(std::string_view token, std::string_view context) {
  try {
    return core::parse_real(token);
  } catch (const Error&) {
    fail(ErrorCode::Parse, "bad number '" + std::string(token) + "' in '" +
                               std::string(context) + "'");
  }
}

std::vector<double> real_args(std::string_view rest, std::size_t count, std::string_view spec) {
  if (rest.empty()) {
    fail(ErrorCode::Parse, "'" + std::string(spec) + "' is missing its parameters");
  }
  const auto parts = split(rest, ',');
  if (count != 0 && parts.size() != count) {
    fail(ErrorCode::Parse, "'" + std::string(spec) + "' expects " + std::to_string(count) +
                               " parameter(s), got " + std::to_string(parts.size()));
  }
  std::vector<double> out;
  for (auto p : parts) out.push_back(real_token(p, spec));
  return out;
}

void no_args(std::string_view rest, std::string_view spec) {
  if (!rest.empty()) {
    fail(ErrorCode::Parse, "'" + std::string(spec) + "' takes no parameters");
  }
}

}  // namespace

core::RateSchedule parse_rates(std::string_view spec) {
  const auto [head, rest] = head_rest(spec);
  if (head == "const") return core::RateSchedule::constant(real_args(rest, 1, spec)[0]);
  if (head == "linear") return core::RateSchedule::linear(real_args(rest, 1, spec)[0]);
  if (head == "logfam") {
    const auto v = real_args(rest, 2, spec);
    return core::RateSchedule::log_family(v[0], v[1]);
  }
  if (head == "logsq") {
    no_args(rest, spec);
    return core::RateSchedule::log_square();
  }
  if (head == "explicit") return core::RateSchedule::explicit_rates(real_args(rest, 0, spec));
  fail(ErrorCode::Parse, "unknown rate family '" + std::string(head) +
                             "' (expected const, linear, logfam, logsq or explicit)");
}

core::InputModel parse_input(std::string_view spec) {
  const auto [head, rest] = head_rest(spec);
  if (head == "permanent") {
    no_args(rest, spec);
    return core::InputModel::permanent();
  }
  if (head == "exp") return core::InputModel::exponential(real_args(rest, 1, spec)[0]);
  if (head == "det") return core::InputModel::deterministic(real_args(rest, 1, spec)[0]);
  if (head == "empirical") {
    if (rest.empty()) fail(ErrorCode::Parse, "'empirical' needs a file path");
    const std::string path(rest);
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Parse, "cannot open empirical input file '" + path + "'");
    std::vector<double> samples;
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto last = line.find_last_not_of(" \t\r");
      samples.push_back(real_token(std::string_view(line).substr(first, last - first + 1), path));
    }
    return core::InputModel::empirical(std::move(samples));
  }
  fail(ErrorCode::Parse, "unknown input law '" + std::string(head) +
                             "' (expected permanent, exp, det or empirical)");
}

frozen::FrozenInstance parse_instance(std::string_view spec) {
  const auto [head, rest] = head_rest(spec);
  if (head == "geometric") return frozen::FrozenInstance::geometric(real_args(rest, 1, spec)[0]);
  if (head == "harmonic") {
    no_args(rest, spec);
    return frozen::FrozenInstance::harmonic();
  }
  if (head == "explicit") return frozen::FrozenInstance::explicit_prefix(real_args(rest, 0, spec));
  fail(ErrorCode::Parse, "unknown instance '" + std::string(head) +
                             "' (expected geometric, harmonic or explicit)");
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto p : split(text, ',')) out.push_back(real_token(p, text));
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto p : split(text, ',')) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc() || ptr != p.data() + p.size() || p.empty()) {
      fail(ErrorCode::Parse, "bad integer '" + std::string(p) + "' in '" + std::string(text) + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace onoff::cli
