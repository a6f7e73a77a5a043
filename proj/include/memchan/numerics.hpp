#pragma once

// Dense linear algebra and information-theoretic primitives.
//
// Everything lives in memory as dense Eigen storage; the dimension cap
// (default 2^16, overridable through MEMCHAN_DIM_CAP) bounds every
// construction so desk-scale runs have predictable memory.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "memchan/error.hpp"

namespace memchan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenClip = 1e-10;

// ---- dimension cap --------------------------------------------------------

std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

/// Throws DimensionCapExceeded when `dim` exceeds the cap.
void check_dimension(std::size_t dim, std::string_view what);

/// base^exp with overflow and cap checks.
std::size_t checked_power(std::size_t base, std::size_t exp, std::string_view what);

// ---- value types ----------------------------------------------------------

void require_finite(const ComplexMatrix& m, std::string_view what);

class StateVector {
 public:
  /// Normalizes `amplitudes`; throws NullState when the norm is below 1e-14.
  explicit StateVector(ComplexVector amplitudes);

  Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](Index i) const { return amps_(i); }

 private:
  ComplexVector amps_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-10) and eigenvalues >= -1e-10.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix diagonal(std::span<const double> probabilities);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  RealVector eigenvalues() const;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Probabilities over length-`length` strings on an alphabet of `alphabet` symbols.
/// Index layout: site 0 is the most significant digit, matching kron ordering.
class ProbabilityDistribution {
 public:
  ProbabilityDistribution(int alphabet, int length, std::vector<double> probs);

  /// Rescales nonnegative weights to unit sum before validating.
  static ProbabilityDistribution normalized(int alphabet, int length, std::vector<double> weights);

  int alphabet() const { return alphabet_; }
  int length() const { return length_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const { return probs_; }

  /// Digit string of index `i`, site 0 first.
  std::vector<int> digits(std::size_t i) const;
  std::size_t index_of(std::span<const int> digits) const;

 private:
  int alphabet_;
  int length_;
  std::vector<double> probs_;
};

// ---- operations -----------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Reduced state on the factors listed in `keep` (any order; output follows ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Index> dims,
                            std::span<const Index> keep);

/// Same as partial_trace(pure(psi), ...) without forming the full projector.
DensityMatrix reduced_state(const StateVector& psi, std::span<const Index> dims,
                            std::span<const Index> keep);

/// Entropies are in bits.
double von_neumann_entropy(const DensityMatrix& rho);
double shannon_entropy(const ProbabilityDistribution& p);
double shannon_entropy(std::span<const double> p);
double binary_entropy(double p);

/// Sum of singular values of (a - b).
double trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_norm(const ComplexMatrix& m);

/// Removes every off-diagonal element in the computational basis.
DensityMatrix dephase(const DensityMatrix& rho);

DensityMatrix tensor_power(const DensityMatrix& rho, int copies);

}  // namespace memchan
