#pragma once

// JSON run configuration: one document per run holding the environment
// specification and command parameters. See docs in README.md.

#include <json.hpp>

#include <string>
#include <string_view>

#include "memchan/environments.hpp"

namespace memchan::cli {

using Json = nlohmann::json;

inline constexpr std::string_view kVersion = "0.1.0";

/// Malformed or inconsistent configuration; the CLI maps it to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

Json load_config(const std::string& path);

/// Applies `dotted.path=value`; value is parsed as JSON when possible, else taken as a string.
void apply_override(Json& config, std::string_view assignment);

struct EnvironmentSpec {
  std::string kind;  // markov | ising | mps | wolf | params | explicit
  Environment env;
};

EnvironmentSpec parse_environment(const Json& spec);

/// Reads config["environment"].
EnvironmentSpec environment_of(const Json& config);

}  // namespace memchan::cli
