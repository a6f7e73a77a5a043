#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "memchan/cli/config.hpp"

namespace memchan::cli {

enum class SweepModel { wolf, params, ising, markov };

struct SweepAxis {
  std::string name;
  double min;
  double max;
  int steps;
};

struct SweepSpec {
  SweepModel model = SweepModel::wolf;
  Json base;                       // model parameters; the axis field is overwritten per point
  std::optional<SweepAxis> axis;   // absent: a single point at `base`
  std::vector<std::string> routes; // closed-transfer | thermo | brute | markov
  std::vector<int> brute_sizes;
  int d = 2;
};

/// Reads config["sweep"] (and config["d"] when the sweep has no "d").
SweepSpec parse_sweep(const Json& config);

/// Grid symmetric about the axis midpoint, so mirrored points are exact negatives when min = -max.
std::vector<double> sweep_grid(const SweepAxis& axis);

struct PointRecord {
  double param;
  std::vector<std::optional<double>> rates;       // one per route, in spec order
  std::vector<std::optional<double>> capacities;
  std::vector<std::string> flags;                 // transition-point, negative-bound-floored, cap-exceeded
};

struct RunReport {
  Json config;
  std::uint64_t seed = 0;
  SweepSpec spec;
  std::vector<PointRecord> points;
};

RunReport run_sweep(const Json& config);

/// Header: param, rate_<route>..., capacity_<route>..., flags (route hyphens become underscores).
void write_csv(const RunReport& report, std::ostream& out);

}  // namespace memchan::cli
