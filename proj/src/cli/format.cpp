#include "memchan/cli/format.hpp"

#include <charconv>
#include <cmath>

namespace memchan::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string config_echo(std::string_view command, const Json& config) {
  return "# memchan " + std::string(kVersion) + " " + std::string(command) + " config=" + config.dump();
}

}  // namespace memchan::cli
