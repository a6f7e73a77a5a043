#pragma once

#include <string>

#include "memchan/cli/config.hpp"

namespace memchan::cli {

/// 12 significant digits, shortest form, locale independent; -0 prints as 0.
std::string format_number(double value);

/// "# memchan <version> <command> config=<compact json>"
std::string config_echo(std::string_view command, const Json& config);

}  // namespace memchan::cli
