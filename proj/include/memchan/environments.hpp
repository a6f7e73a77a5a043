#pragma once

// Many-body environments whose computational-basis diagonal sets the noise
// statistics of a correlated dephasing channel.
//
// All environment sites are qubit-valued. Bit 0 is identified with Ising
// spin +1 and with the "a" weight of the rank-1 MPS reduction; bit 1 with
// spin -1 and "b". Boundaries are periodic throughout.

#include <Eigen/Dense>

#include <span>
#include <variant>
#include <vector>

#include "memchan/numerics.hpp"

namespace memchan {

using TransferMatrix = Eigen::Matrix2d;

class MarkovEnv {
 public:
  /// Stationary distribution is solved for; throws if it is not unique and nonnegative.
  explicit MarkovEnv(Eigen::MatrixXd transition);
  MarkovEnv(Eigen::MatrixXd transition, Eigen::VectorXd stationary);

  int states() const { return static_cast<int>(p_.rows()); }
  const Eigen::MatrixXd& transition() const { return p_; }
  const Eigen::VectorXd& stationary() const { return pi_; }

 private:
  Eigen::MatrixXd p_;
  Eigen::VectorXd pi_;
};

/// Two-state chain with P(0->1) = p01 and P(1->0) = p10.
MarkovEnv two_state_markov(double p01, double p10);

struct ClassicalIsingEnv {
  double coupling;  // J
  double field;     // h
  double beta;

  ClassicalIsingEnv(double coupling, double field, double beta);
};

class Rank1MpsEnv {
 public:
  Rank1MpsEnv(ComplexMatrix q0, ComplexMatrix q1);

  const ComplexMatrix& q0() const { return q0_; }
  const ComplexMatrix& q1() const { return q1_; }
  const ComplexMatrix& q(int bit) const { return bit == 0 ? q0_ : q1_; }

 private:
  ComplexMatrix q0_;
  ComplexMatrix q1_;
};

/// Unnormalized weights of the diagonal: all downstream quantities are
/// invariant under (a, b, c) -> (k a, k b, c).
struct DiagonalParams {
  double a;
  double b;
  double c;

  DiagonalParams(double a, double b, double c);
};

class ExplicitEnv {
 public:
  ExplicitEnv(int sites, StateVector state, int site_dim = 2);
  ExplicitEnv(int sites, DensityMatrix state, int site_dim = 2);

  int sites() const { return sites_; }
  int site_dim() const { return site_dim_; }
  const std::variant<StateVector, DensityMatrix>& state() const { return state_; }
  DensityMatrix density() const;

 private:
  int sites_;
  int site_dim_;
  std::variant<StateVector, DensityMatrix> state_;
};

using Environment = std::variant<MarkovEnv, ClassicalIsingEnv, Rank1MpsEnv, DiagonalParams, ExplicitEnv>;

// ---- rank-1 MPS -----------------------------------------------------------

/// Amplitudes tr{Q_{i1} ... Q_{iN}} on a ring of N sites, normalized.
StateVector mps_state_vector(const Rank1MpsEnv& env, int sites);

/// a = |tr Q0|^2, b = |tr Q1|^2, c = |tr(Q0 Q1)|^2 / (a b).
DiagonalParams rank1_abc(const Rank1MpsEnv& env);

/// Number of 0<->1 boundaries of a ring configuration (always even).
int ring_boundaries(std::span<const int> bits);

/// a^zeros b^(sites - zeros) c^(boundaries / 2): each adjacent (0-block, 1-block)
/// pair on the ring contributes one factor of c.
double diagonal_weight(const DiagonalParams& p, int zeros, int sites, int boundaries);

/// [[a, sqrt(cab)], [sqrt(cab), b]]
TransferMatrix transfer_matrix(const DiagonalParams& p);

/// tr(T^n) by repeated multiplication.
double ring_partition_function(const TransferMatrix& t, int sites);

// ---- classical environments -------------------------------------------------

/// T(s, s') = exp(-beta E(s, s')), E(s, s') = -J s s' - h (s + s') / 2; index 0 is spin +1.
TransferMatrix ising_transfer_matrix(const ClassicalIsingEnv& env);

// ---- wolf model ------------------------------------------------------------

/// Rank-1 MPS ground state of
///   H = sum_i 2(g^2 - 1) Z_i Z_{i+1} - (1 + g)^2 X_i + (g - 1)^2 Z_{i-1} X_i Z_{i+1}
/// with Q0 = [[0, 0], [1, 1]] and Q1 = [[1, g], [0, 0]].
Rank1MpsEnv wolf_env(double g);

/// Dense ring Hamiltonian above on `sites` >= 3 qubits.
Eigen::MatrixXd wolf_hamiltonian(double g, int sites);

// ---- dephased diagonals ---------------------------------------------------

ProbabilityDistribution dephased_diagonal(const ExplicitEnv& env);
ProbabilityDistribution dephased_diagonal(const Rank1MpsEnv& env, int sites);

/// Closed form a^l b^(N-l) c^(K/2) / tr(T^N) over all ring configurations.
ProbabilityDistribution dephased_diagonal(const DiagonalParams& p, int sites);

/// p(s_1 ... s_n) = pi(s_1) prod_k P(s_k, s_{k+1}); open chain started in stationarity.
ProbabilityDistribution markov_diagonal(const MarkovEnv& env, int sites);

/// Ring Gibbs distribution prod_k T(s_k, s_{k+1}) / Z_n.
ProbabilityDistribution ising_diagonal(const ClassicalIsingEnv& env, int sites);

/// Dispatches to the diagonal of any environment kind. Explicit environments
/// require `sites` to equal their own site count.
ProbabilityDistribution diagonal_distribution(const Environment& env, int sites);

}  // namespace memchan
