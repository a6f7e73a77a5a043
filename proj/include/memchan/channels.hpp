#pragma once

// Finite-n correlated dephasing channels and the machinery that relates
// their capacity to the environment's diagonal entropy: Kraus sets, Choi
// states, the hashing bound, coherent information, teleportation through a
// Choi state and the random-unitary lower bound.
//
// Phase strings are indexed by digits e in {0, ..., d-1} per use; digit e
// applies Z(e), so digit 0 is the identity (Z(d) = Z(0) = I).

#include <Eigen/Dense>

#include <random>
#include <span>
#include <string>
#include <vector>

#include "memchan/entropy_rate.hpp"
#include "memchan/numerics.hpp"

namespace memchan {

/// Z(k) = sum_r exp(2 pi i k r / d) |r><r| for 1 <= k <= d.
ComplexMatrix z_unitary(int d, int k);

/// Z(e_1) (x) ... (x) Z(e_n) for digits e_s in [0, d).
ComplexMatrix z_string(int d, std::span<const int> digits);

/// Pauli string for digits in {0: I, 1: X, 2: Y, 3: Z}.
ComplexMatrix pauli_string(std::span<const int> digits);

/// Probabilistic mixture of unitaries acting on `uses` sites of dimension `site_dim` each.
class RandomUnitaryChannel {
 public:
  RandomUnitaryChannel(int site_dim, int uses, std::vector<double> weights, std::vector<ComplexMatrix> unitaries);

  int site_dim() const { return site_dim_; }
  int uses() const { return uses_; }
  Index dim() const { return dim_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const ComplexMatrix> unitaries() const { return unitaries_; }

  std::vector<ComplexMatrix> kraus_operators() const;
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  int site_dim_;
  int uses_;
  Index dim_;
  std::vector<double> weights_;
  std::vector<ComplexMatrix> unitaries_;
};

class CorrelatedDephasingChannel {
 public:
  /// Weights over phase-string digits; the weight alphabet may be smaller than d
  /// (qubit environments driving qudits).
  CorrelatedDephasingChannel(ProbabilityDistribution weights, int d);

  int d() const { return d_; }
  int uses() const { return weights_.length(); }
  Index dim() const { return dim_; }
  const ProbabilityDistribution& weights() const { return weights_; }

  /// {sqrt(p_k) Z(k_1) (x) ... (x) Z(k_n)} over strings with p_k > 0.
  std::vector<ComplexMatrix> kraus_operators() const;
  RandomUnitaryChannel as_random_unitary() const;

 private:
  ProbabilityDistribution weights_;
  int d_;
  Index dim_;
};

CorrelatedDephasingChannel build_channel(ProbabilityDistribution weights, int d);

/// Mixture of n-qubit Pauli strings; weights over base-4 digit strings (0: I, 1: X, 2: Y, 3: Z).
RandomUnitaryChannel pauli_mixture(const ProbabilityDistribution& weights);

/// max |sum K^dag K - I|
double kraus_completeness_error(std::span<const ComplexMatrix> kraus);

/// sum_k p_k Z(k) rho Z(k)^dag
DensityMatrix apply_channel(const CorrelatedDephasingChannel& ch, const DensityMatrix& rho);

/// tr_env{U_z (rho_env (x) rho) U_z^dag} with U_z = sum_e |e><e| (x) Z(e) per site; the
/// environment occupies the first tensor factor.
DensityMatrix apply_dilation(const DensityMatrix& env_state, int env_site_dim, int d, const DensityMatrix& rho);

/// J(E) = (I (x) E)(|+><+|), ordered reference (x) output.
class ChoiState {
 public:
  ChoiState(int site_dim, int uses, DensityMatrix state);

  int site_dim() const { return site_dim_; }
  int uses() const { return uses_; }
  Index system_dim() const { return system_dim_; }
  const DensityMatrix& state() const { return state_; }

  DensityMatrix reference_marginal() const;
  DensityMatrix output_marginal() const;

  /// E(rho) = D tr_R[(rho^T (x) I) J].
  DensityMatrix channel_output(const DensityMatrix& rho) const;

  /// Largest |J(ab, a'b')| with a != b or a' != b'.
  double max_off_pattern() const;

 private:
  int site_dim_;
  int uses_;
  Index system_dim_;
  DensityMatrix state_;
};

ChoiState choi_state(const RandomUnitaryChannel& ch);
ChoiState choi_state(const CorrelatedDephasingChannel& ch);

/// S(reference marginal) - S(J); reported raw, may be negative.
double hashing_bound(const ChoiState& j);

/// sum_i sqrt(lambda_i) |i>_R (x) |e_i>_A, reference first.
StateVector spectral_purification(const DensityMatrix& rho);

/// S(E(rho)) - S((I (x) E)(|psi><psi|)) in bits over all uses, with the spectral purification.
double coherent_information(const RandomUnitaryChannel& ch, const DensityMatrix& input);
double coherent_information(const CorrelatedDephasingChannel& ch, const DensityMatrix& input);

/// Same quantity for an explicit purification on R (x) A; R's dimension is inferred.
double coherent_information(const RandomUnitaryChannel& ch, const StateVector& purification);

struct Capacity {
  double value = 0.0;  // qubits per use
  bool floored = false;
  bool transition_point = false;
};

/// log2 d - rate, floored at zero.
Capacity capacity_from_rate(const EntropyRateResult& rate, int d);

/// log2 d - H(weights) / n per use, with n = weights.length(). Not floored.
double random_unitary_lower_bound(const ProbabilityDistribution& weights, int d);

// ---- teleportation ----------------------------------------------------------

struct TeleportationRecord {
  int outcome;
  std::string correction;
  double probability;
  DensityMatrix output;
};

/// Number of generalized Bell outcomes, D^2.
Index bell_outcomes(const ChoiState& j);

/// Teleports rho through J conditioned on `outcome`, then applies the
/// outcome's Weyl correction to the output half.
TeleportationRecord teleport_through_choi(const ChoiState& j, const DensityMatrix& rho, int outcome);

/// Samples the outcome with its Born probability.
TeleportationRecord teleport_through_choi(const ChoiState& j, const DensityMatrix& rho, std::mt19937_64& rng);

struct TeleportationCheck {
  double max_deviation;  // max over outcomes of ||out_i - E(rho)||_1
  bool simulates_channel;
};

/// Compares every post-correction output against E(rho); fails for non-Pauli-mixture channels.
TeleportationCheck check_teleportation(const ChoiState& j, const DensityMatrix& rho, double tolerance = 1e-10);

}  // namespace memchan
