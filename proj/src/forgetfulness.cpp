#include "memchan/forgetfulness.hpp"

#include <algorithm>
#include <cmath>

namespace memchan {

namespace {

constexpr double kNoiseFloor = 1e-13;

std::vector<Index> qubit_dims(int sites) { return std::vector<Index>(static_cast<std::size_t>(sites), 2); }

DensityMatrix leading_block(const Rank1MpsEnv& env, int live, int sites) {
  if (live > sites) throw InvalidArgument("block longer than the ring");
  const StateVector psi = mps_state_vector(env, sites);
  std::vector<Index> keep(static_cast<std::size_t>(live));
  for (int i = 0; i < live; ++i) keep[static_cast<std::size_t>(i)] = i;
  return reduced_state(psi, qubit_dims(sites), keep);
}

// Relabels site j of the result as site (j + offset) mod n of psi.
StateVector rotated(const StateVector& psi, int sites, int offset) {
  const int shift = offset % sites;
  if (shift == 0) return psi;
  const ComplexVector& in = psi.amplitudes();
  const std::size_t n = static_cast<std::size_t>(sites);
  const std::size_t mask = (std::size_t{1} << n) - 1;
  const std::size_t s = static_cast<std::size_t>(shift);
  ComplexVector out(in.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(in.size()); ++i) {
    // Site 0 is the most significant bit, so moving every site up by `shift` is a right rotation.
    const std::size_t j = ((i >> s) | (i << (n - s))) & mask;
    out(static_cast<Index>(i)) = in(static_cast<Index>(j));
  }
  return StateVector(out);
}

}  // namespace

std::vector<Index> BlockLayout::live_sites() const {
  std::vector<Index> out;
  const int n = sites();
  for (int v = 0; v < sections; ++v) {
    for (int i = 0; i < live; ++i) out.push_back((offset + v * (live + spacer) + i) % n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate(const BlockLayout& layout) {
  if (layout.live < 1 || layout.sections < 1 || layout.spacer < 0 || layout.offset < 0) {
    throw InvalidArgument("block layout needs live >= 1, sections >= 1, spacer >= 0, offset >= 0");
  }
  if (layout.sites() < 2) throw InvalidArgument("block layout needs a ring of at least 2 sites");
}

DensityMatrix live_blocks_state(const Rank1MpsEnv& env, const BlockLayout& layout) {
  validate(layout);
  const StateVector psi = mps_state_vector(env, layout.sites());
  return reduced_state(psi, qubit_dims(layout.sites()), layout.live_sites());
}

double live_vs_product_distance(const Rank1MpsEnv& env, const BlockLayout& layout) {
  validate(layout);
  const StateVector psi = rotated(mps_state_vector(env, layout.sites()), layout.sites(), layout.offset);
  const auto dims = qubit_dims(layout.sites());
  const DensityMatrix joint = reduced_state(psi, dims, BlockLayout{layout.live, layout.spacer, layout.sections}.live_sites());
  std::vector<Index> first(static_cast<std::size_t>(layout.live));
  for (int i = 0; i < layout.live; ++i) first[static_cast<std::size_t>(i)] = i;
  const DensityMatrix block = reduced_state(psi, dims, first);
  return trace_norm_distance(joint, tensor_power(block, layout.sections));
}

double block_convergence(const Rank1MpsEnv& env, int live, int delta, int reference_sites) {
  if (live < 1 || delta < 0) throw InvalidArgument("block convergence needs live >= 1 and delta >= 0");
  if (live + delta > reference_sites) throw InvalidArgument("short ring longer than the reference ring");
  if (live + delta == reference_sites) return 0.0;
  return trace_norm_distance(leading_block(env, live, live + delta), leading_block(env, live, reference_sites));
}

std::string_view to_string(DecayVerdict verdict) {
  switch (verdict) {
    case DecayVerdict::pass: return "pass";
    case DecayVerdict::fail: return "fail";
    case DecayVerdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

DecayFit fit_decay(std::vector<std::pair<double, double>> samples) {
  DecayFit fit;
  for (const auto& [s, dist] : samples) {
    if (!(dist >= 0.0)) throw InvalidArgument("decay samples must have nonnegative distances");
  }
  fit.samples = std::move(samples);

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [s, dist] : fit.samples) {
    if (dist > kNoiseFloor) {
      xs.push_back(s);
      ys.push_back(std::log(dist));
    }
  }
  fit.used = static_cast<int>(xs.size());
  if (fit.used < 3) return fit;

  const double n = static_cast<double>(fit.used);
  double mx = 0.0;
  double my = 0.0;
  for (int i = 0; i < fit.used; ++i) {
    mx += xs[static_cast<std::size_t>(i)];
    my += ys[static_cast<std::size_t>(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int i = 0; i < fit.used; ++i) {
    const double dx = xs[static_cast<std::size_t>(i)] - mx;
    const double dy = ys[static_cast<std::size_t>(i)] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) return fit;  // all samples at one spacer length

  const double slope = sxy / sxx;
  fit.rate = -slope;
  fit.intercept = my - slope * mx;
  // Relative to the data's own scale, a spread below 1e-12 is roundoff: treat as constant.
  const double scale = std::max(1.0, std::abs(my));
  fit.r_squared = syy > 1e-24 * scale * scale * n ? (sxy * sxy) / (sxx * syy) : 0.0;
  fit.verdict = (fit.rate > 1e-6 && fit.r_squared > 0.9) ? DecayVerdict::pass : DecayVerdict::fail;
  return fit;
}

}  // namespace memchan
