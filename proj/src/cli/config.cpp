#include "memchan/cli/config.hpp"

#include <fstream>
#include <sstream>

namespace memchan::cli {

namespace {

double number(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Complex complex_entry(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("complex entries are numbers or [re, im] pairs");
}

ComplexMatrix complex_matrix(const Json& rows, const char* key) {
  if (!rows.is_array() || rows.empty()) throw ConfigError(std::string("'") + key + "' must be a non-empty list of rows");
  const auto n = static_cast<Index>(rows.size());
  const auto m = static_cast<Index>(rows[0].is_array() ? rows[0].size() : 0);
  ComplexMatrix out(n, m);
  for (Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != m) throw ConfigError(std::string("'") + key + "' is ragged");
    for (Index j = 0; j < m; ++j) out(i, j) = complex_entry(row[static_cast<std::size_t>(j)]);
  }
  return out;
}

Eigen::MatrixXd real_matrix(const Json& rows, const char* key) {
  const ComplexMatrix m = complex_matrix(rows, key);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw ConfigError(std::string("'") + key + "' must be real");
  return m.real();
}

Environment parse_kind(const std::string& kind, const Json& spec) {
  if (kind == "wolf") return wolf_env(number(spec, "g"));
  if (kind == "params") return DiagonalParams(number(spec, "a"), number(spec, "b"), number(spec, "c"));
  if (kind == "ising") return ClassicalIsingEnv(number(spec, "J"), number(spec, "h"), number(spec, "beta"));
  if (kind == "mps") {
    if (!spec.contains("Q0") || !spec.contains("Q1")) throw ConfigError("mps environment needs Q0 and Q1");
    return Rank1MpsEnv(complex_matrix(spec.at("Q0"), "Q0"), complex_matrix(spec.at("Q1"), "Q1"));
  }
  if (kind == "markov") {
    if (spec.contains("P")) {
      Eigen::MatrixXd p = real_matrix(spec.at("P"), "P");
      if (spec.contains("pi")) {
        const Json& pi = spec.at("pi");
        if (!pi.is_array()) throw ConfigError("'pi' must be a list");
        Eigen::VectorXd v(static_cast<Index>(pi.size()));
        for (std::size_t i = 0; i < pi.size(); ++i) v(static_cast<Index>(i)) = pi[i].get<double>();
        return MarkovEnv(std::move(p), std::move(v));
      }
      return MarkovEnv(std::move(p));
    }
    return two_state_markov(number(spec, "p01"), number(spec, "p10"));
  }
  if (kind == "explicit") {
    const int sites = static_cast<int>(number(spec, "sites"));
    const int site_dim = spec.contains("site_dim") ? static_cast<int>(number(spec, "site_dim")) : 2;
    if (spec.contains("state")) {
      const Json& amps = spec.at("state");
      if (!amps.is_array()) throw ConfigError("'state' must be a list of amplitudes");
      ComplexVector v(static_cast<Index>(amps.size()));
      for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Index>(i)) = complex_entry(amps[i]);
      return ExplicitEnv(sites, StateVector(std::move(v)), site_dim);
    }
    if (spec.contains("density")) {
      return ExplicitEnv(sites, DensityMatrix(complex_matrix(spec.at("density"), "density")), site_dim);
    }
    throw ConfigError("explicit environment needs 'state' or 'density'");
  }
  throw ConfigError("unknown environment kind '" + kind + "'");
}

}  // namespace

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

void apply_override(Json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("override must look like path.to.field=value");
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  Json value;
  try {
    value = Json::parse(raw);
  } catch (const Json::exception&) {
    value = raw;
  }
  Json* node = &config;
  std::stringstream parts(path);
  std::string key;
  std::vector<std::string> keys;
  while (std::getline(parts, key, '.')) {
    if (key.empty()) throw ConfigError("empty key in override path '" + path + "'");
    keys.push_back(key);
  }
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    if (!node->is_object() && !node->is_null()) throw ConfigError("override path '" + path + "' crosses a non-object");
    node = &(*node)[keys[i]];
  }
  if (!node->is_object() && !node->is_null()) throw ConfigError("override path '" + path + "' crosses a non-object");
  (*node)[keys.back()] = std::move(value);
}

EnvironmentSpec parse_environment(const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string()) {
    throw ConfigError("environment must be an object with a string 'kind'");
  }
  const std::string kind = spec.at("kind").get<std::string>();
  try {
    return {kind, parse_kind(kind, spec)};
  } catch (const ConfigError&) {
    throw;
  } catch (const DimensionCapExceeded&) {
    throw;
  } catch (const Json::exception& e) {
    throw ConfigError("environment '" + kind + "': " + e.what());
  } catch (const Error& e) {
    throw ConfigError("environment '" + kind + "': " + e.what());
  }
}

EnvironmentSpec environment_of(const Json& config) {
  if (!config.is_object() || !config.contains("environment")) throw ConfigError("config has no 'environment' section");
  return parse_environment(config.at("environment"));
}

}  // namespace memchan::cli
