#pragma once

// Routes to the regularized diagonal entropy rate lim S(Diag(rho_env)) / n.
//
//   brute     exhaustive finite-N Shannon entropies, increment estimator
//   transfer  Perron construction on the 2x2 transfer matrix of (a, b, c)
//   thermo    (1 - beta d/dbeta) lim ln Z_n / n for a classical Ising ring
//   markov    -sum_i pi_i sum_j P_ij log2 P_ij
//
// All rates are in bits per site.

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "memchan/environments.hpp"

namespace memchan {

enum class RateRoute { brute, transfer, thermo, markov };

std::string_view to_string(RateRoute route);

struct PerronData {
  double eigenvalue;
  Eigen::Vector2d right_vector;
  Eigen::Matrix2d stochastic;  // M(i,j) = T(i,j) v(j) / (lambda v(i))
  Eigen::Vector2d stationary;
};

struct EntropyRateResult {
  double rate = 0.0;
  RateRoute route = RateRoute::transfer;
  std::vector<std::pair<int, double>> finite_sizes;  // (N, S_N) for the brute route
  std::optional<PerronData> perron;
  /// Set on the c = 0 branch, where the correlation structure of the
  /// environment changes and the rate is known only as a limit.
  bool transition_point = false;
  std::vector<std::string> warnings;
};

/// Increment estimator S_{Nmax} - S_{Nmax - 1}; Nmax - 1 is evaluated even when absent from `sizes`.
EntropyRateResult entropy_rate_brute(const Environment& env, std::span<const int> sizes);

EntropyRateResult entropy_rate_transfer(const DiagonalParams& p);

/// Perron data of transfer_matrix(p); requires c > 0.
PerronData perron_data(const DiagonalParams& p);

/// The stationary Markov chain (M, pi) whose path measure is the ring Gibbs measure in the limit.
MarkovEnv perron_markov(const DiagonalParams& p);

EntropyRateResult entropy_rate_thermo(const ClassicalIsingEnv& env);

/// lim ln Z_n / n = ln lambda_max(T), evaluated in the log domain.
double ising_log_partition_density(const ClassicalIsingEnv& env);

EntropyRateResult markov_entropy_rate(const MarkovEnv& env);

/// a = e^{beta(J + h)}, b = e^{beta(J - h)}, c = e^{-4 beta J}.
DiagonalParams ising_to_params(const ClassicalIsingEnv& env);

/// Inverse of ising_to_params up to the common scale of (a, b). Throws
/// DegenerateEnvironment for c = 0, which sits at beta J -> infinity.
ClassicalIsingEnv params_to_ising(const DiagonalParams& p, double beta);

}  // namespace memchan
