#include "memchan/cli/reports.hpp"

#include <algorithm>
#include <cmath>

#include "memchan/channels.hpp"
#include "memchan/cli/format.hpp"

namespace memchan::cli {

namespace {

int read_d(const Json& config) {
  const Json& v = config.contains("d") ? config.at("d") : Json(2);
  if (!v.is_number_integer() || v.get<int>() < 2) throw ConfigError("'d' must be an integer >= 2");
  return v.get<int>();
}

void line(std::ostream& out, const char* key, double value) { out << key << " = " << format_number(value) << '\n'; }

}  // namespace

ChannelReport channel_report(const Json& config, int uses) {
  if (uses < 1 || uses > 3) throw ConfigError("channel needs 1 <= n <= 3");
  const int d = read_d(config);
  const EnvironmentSpec spec = environment_of(config);
  ProbabilityDistribution diag = diagonal_distribution(spec.env, uses);
  if (diag.alphabet() > d) throw ConfigError("environment alphabet exceeds d");

  const double s_diag = shannon_entropy(diag);
  const CorrelatedDephasingChannel channel = build_channel(diag, d);
  const ChoiState j = choi_state(channel);
  const Index dim = channel.dim();

  Json echo = config;
  echo["d"] = d;
  echo["n"] = uses;
  ChannelReport r{echo, uses, d, s_diag, 0.0, 0.0, 0.0, 0.0, 0.0};
  r.hashing = hashing_bound(j);
  r.coherent_information = coherent_information(channel, DensityMatrix::maximally_mixed(dim));
  r.residual = std::abs(r.hashing - (uses * std::log2(static_cast<double>(d)) - s_diag));
  r.off_pattern = j.max_off_pattern();
  r.lower_bound = random_unitary_lower_bound(diag, d);
  return r;
}

void write_channel_report(const ChannelReport& r, std::ostream& out) {
  out << config_echo("channel", r.config) << '\n';
  out << "n = " << r.uses << '\n';
  out << "d = " << r.d << '\n';
  line(out, "diagonal_entropy", r.diagonal_entropy);
  line(out, "hashing_bound", r.hashing);
  line(out, "coherent_information", r.coherent_information);
  line(out, "identity_residual", r.residual);
  line(out, "off_pattern_max", r.off_pattern);
  line(out, "lower_bound_per_use", r.lower_bound);
}

std::string ForgetfulReport::verdict() const {
  switch (fit.verdict) {
    case DecayVerdict::pass: return "pass";
    case DecayVerdict::indeterminate: return "indeterminate";
    case DecayVerdict::fail: break;
  }
  return std::find(flags.begin(), flags.end(), "transition-point") != flags.end() ? "fails (transition)" : "fails";
}

ForgetfulReport forgetful_report(const Json& config, int live, int sections, const std::vector<int>& spacers) {
  if (live < 1 || sections < 1) throw ConfigError("forgetful needs l >= 1 and v >= 1");
  if (spacers.empty()) throw ConfigError("forgetful needs at least one spacer length");
  for (int s : spacers) {
    if (s < 0) throw ConfigError("spacer lengths must be nonnegative");
  }
  const EnvironmentSpec spec = environment_of(config);
  const auto* env = std::get_if<Rank1MpsEnv>(&spec.env);
  if (env == nullptr) throw ConfigError("forgetful needs a rank-1 MPS environment (kind wolf or mps)");

  Json echo = config;
  echo["l"] = live;
  echo["v"] = sections;
  echo["s"] = spacers;
  ForgetfulReport r{echo, live, sections, {}, {}, {}};
  std::vector<std::pair<double, double>> samples;
  for (int s : spacers) {
    const BlockLayout layout{live, s, sections};
    const double dist = live_vs_product_distance(*env, layout);
    const double conv = block_convergence(*env, live, s, layout.sites());
    r.rows.push_back({s, dist, conv});
    samples.emplace_back(static_cast<double>(s), dist);
  }
  r.fit = fit_decay(std::move(samples));
  if (r.fit.verdict == DecayVerdict::fail && r.fit.r_squared == 0.0) {
    // No decay at all: the distance does not move with the spacer.
    r.flags.push_back("transition-point");
  }
  if (r.fit.verdict == DecayVerdict::indeterminate) r.flags.push_back("indeterminate-fit");
  return r;
}

void write_forgetful_report(const ForgetfulReport& r, std::ostream& out) {
  out << config_echo("forgetful", r.config) << '\n';
  out << "s,distance,P\n";
  for (const auto& row : r.rows) {
    out << row.spacer << ',' << format_number(row.distance) << ',' << format_number(row.convergence) << '\n';
  }
  out << "# l = " << r.live << ", v = " << r.sections << '\n';
  out << "# F = " << format_number(r.fit.rate) << ", r_squared = " << format_number(r.fit.r_squared)
      << ", samples_used = " << r.fit.used << '\n';
  out << "# verdict = " << r.verdict() << '\n';
  out << "# flags = ";
  for (std::size_t i = 0; i < r.flags.size(); ++i) out << (i ? ";" : "") << r.flags[i];
  out << '\n';
}

}  // namespace memchan::cli
