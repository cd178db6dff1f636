#pragma once

#include <string>
#include <string_view>

namespace onoff::core {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_real(double v);

/// Strict full-string parse of a real number; throws Error(Parse) otherwise.
double parse_real(std::string_view text);

}  // namespace onoff::core
