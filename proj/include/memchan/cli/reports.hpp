#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "memchan/cli/config.hpp"
#include "memchan/forgetfulness.hpp"

namespace memchan::cli {

struct ChannelReport {
  Json config;
  int uses;
  int d;
  double diagonal_entropy;      // S(Diag) over all uses, bits
  double hashing;               // hashing bound of the Choi state
  double coherent_information;  // at the maximally mixed input
  double residual;              // |hashing - (n log2 d - S(Diag))|
  double off_pattern;           // largest Choi entry outside |ii><jj|
  double lower_bound;           // per use
};

/// Needs uses <= 3. The environment's site alphabet must not exceed d.
ChannelReport channel_report(const Json& config, int uses);
void write_channel_report(const ChannelReport& report, std::ostream& out);

struct ForgetfulRow {
  int spacer;
  double distance;     // live blocks against the product of one block marginal
  double convergence;  // P(l, s) against the ring of v (l + s) sites
};

struct ForgetfulReport {
  Json config;
  int live;
  int sections;
  std::vector<ForgetfulRow> rows;
  DecayFit fit;
  std::vector<std::string> flags;  // transition-point, indeterminate-fit

  /// pass, fails (transition), fails, indeterminate
  std::string verdict() const;
};

/// The environment must be a rank-1 matrix product state (kind wolf or mps).
ForgetfulReport forgetful_report(const Json& config, int live, int sections, const std::vector<int>& spacers);
void write_forgetful_report(const ForgetfulReport& report, std::ostream& out);

}  // namespace memchan::cli
