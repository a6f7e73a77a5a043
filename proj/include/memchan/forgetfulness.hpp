#pragma once

// Desk-scale checks of the two decay conditions behind the capacity formula:
// live blocks of a ring state against the product of their marginals, and
// block reduced states of short rings against those of a long ring.

#include <string_view>
#include <utility>
#include <vector>

#include "memchan/environments.hpp"

namespace memchan {

/// v sections of one live block (l sites) followed by one spacer (s sites) on a ring of N = v (l + s).
struct BlockLayout {
  int live;
  int spacer;
  int sections;
  int offset = 0;  // ring rotation of the first live block

  int sites() const { return sections * (live + spacer); }
  std::vector<Index> live_sites() const;
};

void validate(const BlockLayout& layout);

/// Reduced state of all live blocks, spacers traced out.
DensityMatrix live_blocks_state(const Rank1MpsEnv& env, const BlockLayout& layout);

/// || rho_{L1 ... Lv} - (rho^l_N)^{(x) v} ||_1
double live_vs_product_distance(const Rank1MpsEnv& env, const BlockLayout& layout);

/// P(l, delta) = || rho^l_{l + delta} - rho^l_{N_ref} ||_1
double block_convergence(const Rank1MpsEnv& env, int live, int delta, int reference_sites);

enum class DecayVerdict { pass, fail, indeterminate };

std::string_view to_string(DecayVerdict verdict);

struct DecayFit {
  std::vector<std::pair<double, double>> samples;  // (s, distance)
  double rate = 0.0;       // F from distance ~ exp(intercept - rate * s)
  double intercept = 0.0;
  double r_squared = 0.0;  // 0 when ln(distance) has no spread
  int used = 0;            // samples above the 1e-13 noise floor
  DecayVerdict verdict = DecayVerdict::indeterminate;
};

/// Least-squares line through (s, ln distance) over samples with distance > 1e-13.
/// Pass requires rate > 1e-6 and r_squared > 0.9; fewer than three usable samples is indeterminate.
DecayFit fit_decay(std::vector<std::pair<double, double>> samples);

}  // namespace memchan
