#include "memchan/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace memchan {

namespace {

constexpr std::size_t kDefaultCap = std::size_t{1} << 16;

std::size_t cap_from_environment() {
  const char* raw = std::getenv("MEMCHAN_DIM_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) {
    throw InvalidArgument("MEMCHAN_DIM_CAP must be a positive integer, got '" + std::string(raw) + "'");
  }
  return static_cast<std::size_t>(v);
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{cap_from_environment()};
  return cap;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

// Offsets of every multi-index over `factors` inside the full index space.
std::vector<Index> offsets(std::span<const Index> dims, std::span<const Index> strides,
                           const std::vector<Index>& factors) {
  std::vector<Index> out{0};
  for (Index f : factors) {
    std::vector<Index> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[f]));
    for (Index base : out) {
      for (Index v = 0; v < dims[f]; ++v) next.push_back(base + v * strides[f]);
    }
    out = std::move(next);
  }
  return out;
}

struct Split {
  std::vector<Index> kept;
  std::vector<Index> traced;
};

Split split_factors(std::span<const Index> dims, std::span<const Index> keep, Index total) {
  Index product = 1;
  for (Index d : dims) {
    if (d <= 0) throw InvalidArgument("partial trace: factor dimensions must be positive");
    product *= d;
  }
  if (product != total) {
    throw InvalidArgument("partial trace: product of factor dimensions " + std::to_string(product) +
                          " does not match state dimension " + std::to_string(total));
  }
  std::vector<bool> chosen(dims.size(), false);
  for (Index k : keep) {
    if (k < 0 || k >= static_cast<Index>(dims.size())) {
      throw InvalidArgument("partial trace: keep index " + std::to_string(k) + " out of range");
    }
    if (chosen[k]) throw InvalidArgument("partial trace: duplicate keep index " + std::to_string(k));
    chosen[k] = true;
  }
  Split s;
  for (Index f = 0; f < static_cast<Index>(dims.size()); ++f) (chosen[f] ? s.kept : s.traced).push_back(f);
  return s;
}

std::vector<Index> strides_of(std::span<const Index> dims) {
  std::vector<Index> strides(dims.size(), 1);
  for (Index f = static_cast<Index>(dims.size()) - 2; f >= 0; --f) strides[f] = strides[f + 1] * dims[f + 1];
  return strides;
}

}  // namespace

std::size_t dimension_cap() { return cap_storage().load(); }

void set_dimension_cap(std::size_t cap) {
  if (cap == 0) throw InvalidArgument("dimension cap must be positive");
  cap_storage().store(cap);
}

void check_dimension(std::size_t dim, std::string_view what) {
  if (dim > dimension_cap()) {
    throw DimensionCapExceeded(std::string(what) + ": dimension " + std::to_string(dim) +
                               " exceeds cap " + std::to_string(dimension_cap()));
  }
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::string_view what) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) {
      throw DimensionCapExceeded(std::string(what) + ": dimension overflows size_t");
    }
    out *= base;
    check_dimension(out, what);
  }
  return out;
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
}

// ---- StateVector ----------------------------------------------------------

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw InvalidArgument("state vector must be non-empty");
  check_dimension(static_cast<std::size_t>(amps_.size()), "state vector");
  if (!amps_.allFinite()) throw InvalidArgument("state vector has non-finite amplitudes");
  const double norm = amps_.norm();
  if (norm < 1e-14) throw NullState("state vector norm " + std::to_string(norm) + " is below 1e-14");
  amps_ /= norm;
}

// ---- DensityMatrix --------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw InvalidArgument("density matrix must be square and non-empty");
  check_dimension(static_cast<std::size_t>(m_.rows()), "density matrix");
  require_finite(m_, "density matrix");
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw InvalidArgument("density matrix is not Hermitian (max deviation " + std::to_string(asym) + ")");
  }
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidArgument("density matrix trace " + std::to_string(tr) + " differs from 1");
  }
  const double lowest = hermitian_eigenvalues(m_).minCoeff();
  if (lowest < -kEigenClip) {
    throw InvalidArgument("density matrix has eigenvalue " + std::to_string(lowest) + " below -1e-10");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const auto& v = psi.amplitudes();
  return DensityMatrix(ComplexMatrix(v * v.adjoint()), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) throw InvalidArgument("dimension must be positive");
  check_dimension(static_cast<std::size_t>(dim), "maximally mixed state");
  return DensityMatrix(ComplexMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim)), Unchecked{});
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(probabilities.size()),
                                        static_cast<Index>(probabilities.size()));
  for (std::size_t i = 0; i < probabilities.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = probabilities[i];
  return DensityMatrix(std::move(m));
}

RealVector DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

// ---- ProbabilityDistribution ----------------------------------------------

ProbabilityDistribution::ProbabilityDistribution(int alphabet, int length, std::vector<double> probs)
    : alphabet_(alphabet), length_(length), probs_(std::move(probs)) {
  if (alphabet < 1 || length < 1) throw InvalidArgument("distribution needs alphabet >= 1 and length >= 1");
  const std::size_t expected = checked_power(static_cast<std::size_t>(alphabet), static_cast<std::size_t>(length),
                                             "probability distribution");
  if (probs_.size() != expected) {
    throw InvalidArgument("distribution has " + std::to_string(probs_.size()) + " entries, expected " +
                          std::to_string(expected));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidArgument("distribution entries must be finite and nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw InvalidArgument("distribution sums to " + std::to_string(sum) + ", not 1");
  }
}

ProbabilityDistribution ProbabilityDistribution::normalized(int alphabet, int length, std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("weights must be finite and nonnegative");
    sum += w;
  }
  if (!(sum > 0.0)) throw NullState("all weights vanish");
  for (double& w : weights) w /= sum;
  return ProbabilityDistribution(alphabet, length, std::move(weights));
}

std::vector<int> ProbabilityDistribution::digits(std::size_t i) const {
  std::vector<int> out(static_cast<std::size_t>(length_));
  for (int site = length_ - 1; site >= 0; --site) {
    out[static_cast<std::size_t>(site)] = static_cast<int>(i % static_cast<std::size_t>(alphabet_));
    i /= static_cast<std::size_t>(alphabet_);
  }
  return out;
}

std::size_t ProbabilityDistribution::index_of(std::span<const int> digits) const {
  if (digits.size() != static_cast<std::size_t>(length_)) throw InvalidArgument("digit string has wrong length");
  std::size_t idx = 0;
  for (int dgt : digits) {
    if (dgt < 0 || dgt >= alphabet_) throw InvalidArgument("digit out of alphabet range");
    idx = idx * static_cast<std::size_t>(alphabet_) + static_cast<std::size_t>(dgt);
  }
  return idx;
}

// ---- operations -----------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_dimension(static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows()), "kron rows");
  check_dimension(static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols()), "kron cols");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  check_dimension(static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size()), "kron");
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Index> dims, std::span<const Index> keep) {
  const Split s = split_factors(dims, keep, rho.dim());
  const auto strides = strides_of(dims);
  const auto kept = offsets(dims, strides, s.kept);
  const auto traced = offsets(dims, strides, s.traced);
  const auto& m = rho.matrix();
  const Index n = static_cast<Index>(kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (Index t : traced) acc += m(kept[i] + t, kept[j] + t);
      out(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix reduced_state(const StateVector& psi, std::span<const Index> dims, std::span<const Index> keep) {
  const Split s = split_factors(dims, keep, psi.dim());
  const auto strides = strides_of(dims);
  const auto kept = offsets(dims, strides, s.kept);
  const auto traced = offsets(dims, strides, s.traced);
  ComplexMatrix block(static_cast<Index>(kept.size()), static_cast<Index>(traced.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t t = 0; t < traced.size(); ++t) {
      block(static_cast<Index>(i), static_cast<Index>(t)) = psi[kept[i] + traced[t]];
    }
  }
  return DensityMatrix(ComplexMatrix(block * block.adjoint()));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda < -kEigenClip) throw NumericalError("negative eigenvalue " + std::to_string(lambda) + " in entropy");
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

double shannon_entropy(const ProbabilityDistribution& p) { return shannon_entropy(p.values()); }

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw InvalidArgument("binary entropy argument outside [0,1]");
  const double q[2] = {p, 1.0 - p};
  return shannon_entropy(q);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTol) {
    return hermitian_eigenvalues(ComplexMatrix(0.5 * (m + m.adjoint()))).cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument("trace distance: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  }
  return trace_norm(a.matrix() - b.matrix());
}

DensityMatrix dephase(const DensityMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  out.diagonal() = rho.matrix().diagonal().real().cast<Complex>();
  return DensityMatrix(std::move(out));
}

DensityMatrix tensor_power(const DensityMatrix& rho, int copies) {
  if (copies < 1) throw InvalidArgument("tensor power needs at least one copy");
  ComplexMatrix out = rho.matrix();
  for (int i = 1; i < copies; ++i) out = kron(out, rho.matrix());
  return DensityMatrix(std::move(out));
}

}  // namespace memchan
