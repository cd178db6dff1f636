#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "onoff/core/input_model.hpp"
#include "onoff/core/rate_schedule.hpp"
#include "onoff/frozen/frozen.hpp"

namespace onoff::cli {

/// `const:c | linear:c | logfam:theta,alpha | logsq | explicit:v1,v2,...`
core::RateSchedule parse_rates(std::string_view spec);

/// `permanent | exp:rho | det:d | empirical:path`; the file holds one
/// positive value per line, blank lines and `#` comments ignored.
core::InputModel parse_input(std::string_view spec);

/// `geometric:r | harmonic | explicit:v1,v2,...`
frozen::FrozenInstance parse_instance(std::string_view spec);

std::vector<double> parse_real_list(std::string_view text);
std::vector<std::int64_t> parse_int_list(std::string_view text);

}  // namespace onoff::cli
