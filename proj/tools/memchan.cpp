// memchan: capacities of correlated dephasing channels driven by many-body environments.
//
// Exit codes: 0 ok, 1 verification failure, 2 config or usage error, 3 computation error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "memchan/cli/config.hpp"
#include "memchan/cli/reports.hpp"
#include "memchan/cli/sweep.hpp"
#include "memchan/cli/verify.hpp"

namespace {

using memchan::cli::Json;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kComputation = 3;

// Reads MEMCHAN_DIM_CAP up front so a malformed value is a usage error, not a mid-run failure.
void apply_env_cap() { (void)memchan::dimension_cap(); }

Json resolved_config(const std::string& path, const std::vector<std::string>& overrides) {
  Json config = memchan::cli::load_config(path);
  for (const auto& o : overrides) memchan::cli::apply_override(config, o);
  return config;
}

template <typename Write>
void emit(const std::string& out_path, Write write) {
  if (out_path.empty() || out_path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw memchan::cli::ConfigError("cannot write '" + out_path + "'");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memchan: quantum capacities of correlated dephasing channels"};
  app.set_version_flag("--version", std::string(memchan::cli::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  std::string suite = "all";
  std::uint64_t seed = memchan::cli::kDefaultSeed;
  int uses = 0;
  int live = 0;
  int sections = 0;
  std::vector<int> spacers;

  auto* sweep = app.add_subcommand("sweep", "tabulate entropy rates and capacities over a parameter axis");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--set", overrides, "override a config field, path.to.field=value");

  auto* verify = app.add_subcommand("verify", "run a self-check suite");
  verify->add_option("--suite", suite, "routes, channels, forgetful, oracle or all");
  verify->add_option("--seed", seed, "seed for randomized checks");

  auto* channel = app.add_subcommand("channel", "finite-n channel report");
  channel->add_option("--config", config_path, "JSON config")->required();
  channel->add_option("--n", uses, "number of channel uses (<= 3)")->required();
  channel->add_option("--set", overrides, "override a config field, path.to.field=value");

  auto* forgetful = app.add_subcommand("forgetful", "block decay table for a rank-1 MPS environment");
  forgetful->add_option("--config", config_path, "JSON config")->required();
  forgetful->add_option("--l", live, "live block length")->required();
  forgetful->add_option("--v", sections, "number of live blocks")->required();
  forgetful->add_option("--s", spacers, "spacer lengths, comma separated")->required()->delimiter(',');
  forgetful->add_option("--out", out_path, "CSV output path (default stdout)");
  forgetful->add_option("--set", overrides, "override a config field, path.to.field=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    apply_env_cap();
    if (*sweep) {
      const auto report = memchan::cli::run_sweep(resolved_config(config_path, overrides));
      emit(out_path, [&](std::ostream& os) { memchan::cli::write_csv(report, os); });
    } else if (*verify) {
      const auto results = memchan::cli::run_verify(suite, seed);
      std::cout << "# memchan " << memchan::cli::kVersion << " verify suite=" << suite << " seed=" << seed << '\n';
      return memchan::cli::write_verify_table(results, std::cout) ? kOk : kVerifyFailed;
    } else if (*channel) {
      const auto report = memchan::cli::channel_report(resolved_config(config_path, overrides), uses);
      memchan::cli::write_channel_report(report, std::cout);
    } else if (*forgetful) {
      const auto report = memchan::cli::forgetful_report(resolved_config(config_path, overrides), live, sections, spacers);
      emit(out_path, [&](std::ostream& os) { memchan::cli::write_forgetful_report(report, os); });
    }
  } catch (const memchan::cli::ConfigError& e) {
    std::cerr << "memchan: " << e.what() << '\n';
    return kUsage;
  } catch (const memchan::InvalidArgument& e) {
    std::cerr << "memchan: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "memchan: " << e.what() << '\n';
    return kComputation;
  }
  return kOk;
}
