#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace memchan::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

/// suite in {routes, channels, forgetful, oracle, all}; anything else throws ConfigError.
std::vector<CheckResult> run_verify(std::string_view suite, std::uint64_t seed = kDefaultSeed);

/// One line per check; returns true iff every check passed.
bool write_verify_table(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace memchan::cli
