#include "memchan/channels.hpp"

#include <cmath>
#include <numbers>

namespace memchan {

namespace {

constexpr double kUnitaryTol = 1e-10;

Complex root_of_unity(int d, long long power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) / static_cast<double>(d);
  return std::polar(1.0, angle);
}

Index system_dimension(int site_dim, int uses, std::string_view what) {
  if (site_dim < 2 || uses < 1) throw InvalidArgument(std::string(what) + ": need site_dim >= 2 and uses >= 1");
  return static_cast<Index>(checked_power(static_cast<std::size_t>(site_dim), static_cast<std::size_t>(uses), what));
}

// Diagonal of the phase string for digits `k` at every system basis index.
ComplexVector phase_diagonal(int d, std::span<const int> k) {
  const auto n = static_cast<int>(k.size());
  const Index dim = system_dimension(d, n, "phase string");
  ComplexVector diag(dim);
  std::vector<int> r(k.size());
  for (Index idx = 0; idx < dim; ++idx) {
    Index rest = idx;
    long long power = 0;
    for (int s = n - 1; s >= 0; --s) {
      r[static_cast<std::size_t>(s)] = static_cast<int>(rest % d);
      rest /= d;
    }
    for (int s = 0; s < n; ++s) power += static_cast<long long>(k[static_cast<std::size_t>(s)]) * r[static_cast<std::size_t>(s)];
    diag(idx) = root_of_unity(d, power);
  }
  return diag;
}

}  // namespace

ComplexMatrix z_unitary(int d, int k) {
  if (d < 2) throw InvalidArgument("Z(k) needs d >= 2");
  if (k < 1 || k > d) throw InvalidArgument("Z(k) index " + std::to_string(k) + " outside [1, d]");
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int r = 0; r < d; ++r) z(r, r) = root_of_unity(d, static_cast<long long>(k) * r);
  return z;
}

ComplexMatrix z_string(int d, std::span<const int> digits) {
  if (digits.empty()) throw InvalidArgument("phase string needs at least one digit");
  for (int e : digits) {
    if (e < 0 || e >= d) throw InvalidArgument("phase digit outside [0, d)");
  }
  return phase_diagonal(d, digits).asDiagonal();
}

ComplexMatrix pauli_string(std::span<const int> digits) {
  if (digits.empty()) throw InvalidArgument("Pauli string needs at least one digit");
  const Complex i{0.0, 1.0};
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int p : digits) {
    ComplexMatrix s(2, 2);
    switch (p) {
      case 0: s << 1.0, 0.0, 0.0, 1.0; break;
      case 1: s << 0.0, 1.0, 1.0, 0.0; break;
      case 2: s << 0.0, -i, i, 0.0; break;
      case 3: s << 1.0, 0.0, 0.0, -1.0; break;
      default: throw InvalidArgument("Pauli digit outside [0, 3]");
    }
    out = kron(out, s);
  }
  return out;
}

// ---- RandomUnitaryChannel -------------------------------------------------

RandomUnitaryChannel::RandomUnitaryChannel(int site_dim, int uses, std::vector<double> weights,
                                           std::vector<ComplexMatrix> unitaries)
    : site_dim_(site_dim),
      uses_(uses),
      dim_(system_dimension(site_dim, uses, "random unitary channel")),
      weights_(std::move(weights)),
      unitaries_(std::move(unitaries)) {
  if (weights_.empty() || weights_.size() != unitaries_.size()) {
    throw InvalidArgument("random unitary channel needs one weight per unitary");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("channel weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kTraceTol) throw InvalidArgument("channel weights must sum to 1");
  const ComplexMatrix id = ComplexMatrix::Identity(dim_, dim_);
  for (const auto& u : unitaries_) {
    if (u.rows() != dim_ || u.cols() != dim_) throw InvalidArgument("unitary has wrong dimension");
    if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > kUnitaryTol) throw InvalidArgument("operator is not unitary");
  }
}

std::vector<ComplexMatrix> RandomUnitaryChannel::kraus_operators() const {
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k] > 0.0) out.push_back(std::sqrt(weights_[k]) * unitaries_[k]);
  }
  return out;
}

DensityMatrix RandomUnitaryChannel::apply(const DensityMatrix& rho) const {
  if (rho.dim() != dim_) throw InvalidArgument("channel input has wrong dimension");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k] > 0.0) out += weights_[k] * (unitaries_[k] * rho.matrix() * unitaries_[k].adjoint());
  }
  return DensityMatrix(std::move(out));
}

// ---- CorrelatedDephasingChannel -------------------------------------------

CorrelatedDephasingChannel::CorrelatedDephasingChannel(ProbabilityDistribution weights, int d)
    : weights_(std::move(weights)), d_(d), dim_(system_dimension(d, weights_.length(), "dephasing channel")) {
  if (weights_.alphabet() > d) {
    throw InvalidArgument("weight alphabet " + std::to_string(weights_.alphabet()) + " exceeds system dimension " +
                          std::to_string(d));
  }
}

std::vector<ComplexMatrix> CorrelatedDephasingChannel::kraus_operators() const {
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k] > 0.0) out.push_back(std::sqrt(weights_[k]) * z_string(d_, weights_.digits(k)));
  }
  return out;
}

RandomUnitaryChannel CorrelatedDephasingChannel::as_random_unitary() const {
  std::vector<double> w;
  std::vector<ComplexMatrix> u;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k] > 0.0) {
      w.push_back(weights_[k]);
      u.push_back(z_string(d_, weights_.digits(k)));
    }
  }
  // Dropped zero weights can leave the sum slightly off 1; rescale.
  double sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;
  return RandomUnitaryChannel(d_, uses(), std::move(w), std::move(u));
}

CorrelatedDephasingChannel build_channel(ProbabilityDistribution weights, int d) {
  return CorrelatedDephasingChannel(std::move(weights), d);
}

RandomUnitaryChannel pauli_mixture(const ProbabilityDistribution& weights) {
  if (weights.alphabet() != 4) throw InvalidArgument("Pauli mixture weights must be over base-4 strings");
  std::vector<double> w;
  std::vector<ComplexMatrix> u;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    w.push_back(weights[k]);
    u.push_back(pauli_string(weights.digits(k)));
  }
  return RandomUnitaryChannel(2, weights.length(), std::move(w), std::move(u));
}

double kraus_completeness_error(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw InvalidArgument("empty Kraus set");
  const Index dim = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

DensityMatrix apply_channel(const CorrelatedDephasingChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim()) throw InvalidArgument("channel input has wrong dimension");
  // Output is the Schur product of rho with sum_k p_k z_k z_k^dag.
  ComplexMatrix coherence = ComplexMatrix::Zero(ch.dim(), ch.dim());
  const auto& w = ch.weights();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0.0) continue;
    const ComplexVector z = phase_diagonal(ch.d(), w.digits(k));
    coherence += w[k] * (z * z.adjoint());
  }
  return DensityMatrix(ComplexMatrix(coherence.cwiseProduct(rho.matrix())));
}

DensityMatrix apply_dilation(const DensityMatrix& env_state, int env_site_dim, int d, const DensityMatrix& rho) {
  if (env_site_dim < 2) throw InvalidArgument("environment sites need dimension >= 2");
  int sites = 0;
  for (Index dim = 1; dim < env_state.dim(); dim *= env_site_dim) ++sites;
  const Index env_dim = env_state.dim();
  const Index sys_dim = system_dimension(d, sites, "dilation");
  if (static_cast<Index>(checked_power(static_cast<std::size_t>(env_site_dim), static_cast<std::size_t>(sites),
                                       "dilation")) != env_dim) {
    throw InvalidArgument("environment dimension is not a power of its site dimension");
  }
  if (rho.dim() != sys_dim) throw InvalidArgument("dilation: system state has wrong dimension");

  ComplexMatrix joint = kron(env_state.matrix(), rho.matrix());
  ComplexVector u(env_dim * sys_dim);
  std::vector<int> e(static_cast<std::size_t>(sites));
  for (Index ei = 0; ei < env_dim; ++ei) {
    Index rest = ei;
    for (int s = sites - 1; s >= 0; --s) {
      e[static_cast<std::size_t>(s)] = static_cast<int>(rest % env_site_dim);
      rest /= env_site_dim;
    }
    u.segment(ei * sys_dim, sys_dim) = phase_diagonal(d, e);
  }
  joint = (u.asDiagonal() * joint * u.conjugate().asDiagonal()).eval();
  joint = (0.5 * (joint + joint.adjoint())).eval();
  const Index dims[2] = {env_dim, sys_dim};
  const Index keep[1] = {1};
  return partial_trace(DensityMatrix(std::move(joint)), dims, keep);
}

// ---- Choi states ----------------------------------------------------------

ChoiState::ChoiState(int site_dim, int uses, DensityMatrix state)
    : site_dim_(site_dim),
      uses_(uses),
      system_dim_(system_dimension(site_dim, uses, "Choi state")),
      state_(std::move(state)) {
  if (state_.dim() != system_dim_ * system_dim_) throw InvalidArgument("Choi state has wrong dimension");
  const DensityMatrix ref = reference_marginal();
  const ComplexMatrix mixed = ComplexMatrix::Identity(system_dim_, system_dim_) / static_cast<double>(system_dim_);
  if ((ref.matrix() - mixed).cwiseAbs().maxCoeff() > kTraceTol) {
    throw InvalidArgument("Choi state reference marginal is not maximally mixed (channel not trace preserving)");
  }
}

DensityMatrix ChoiState::reference_marginal() const {
  const Index dims[2] = {system_dim_, system_dim_};
  const Index keep[1] = {0};
  return partial_trace(state_, dims, keep);
}

DensityMatrix ChoiState::output_marginal() const {
  const Index dims[2] = {system_dim_, system_dim_};
  const Index keep[1] = {1};
  return partial_trace(state_, dims, keep);
}

DensityMatrix ChoiState::channel_output(const DensityMatrix& rho) const {
  if (rho.dim() != system_dim_) throw InvalidArgument("channel input has wrong dimension");
  const Index dim = system_dim_;
  const auto& j = state_.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Index b = 0; b < dim; ++b) {
    for (Index bp = 0; bp < dim; ++bp) {
      Complex acc{0.0, 0.0};
      for (Index r = 0; r < dim; ++r) {
        for (Index rp = 0; rp < dim; ++rp) acc += rho(rp, r) * j(rp * dim + b, r * dim + bp);
      }
      out(b, bp) = static_cast<double>(dim) * acc;
    }
  }
  return DensityMatrix(std::move(out));
}

double ChoiState::max_off_pattern() const {
  const Index dim = system_dim_;
  const auto& j = state_.matrix();
  double worst = 0.0;
  for (Index row = 0; row < j.rows(); ++row) {
    for (Index col = 0; col < j.cols(); ++col) {
      const bool on_pattern = row / dim == row % dim && col / dim == col % dim;
      if (!on_pattern) worst = std::max(worst, std::abs(j(row, col)));
    }
  }
  return worst;
}

ChoiState choi_state(const RandomUnitaryChannel& ch) {
  const Index dim = ch.dim();
  check_dimension(static_cast<std::size_t>(dim * dim), "Choi state");
  ComplexMatrix j = ComplexMatrix::Zero(dim * dim, dim * dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  const auto weights = ch.weights();
  const auto unitaries = ch.unitaries();
  ComplexVector v(dim * dim);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] == 0.0) continue;
    // (I (x) U)|+>: component (i, j) is U(j, i) / sqrt(D).
    for (Index i = 0; i < dim; ++i) {
      for (Index jj = 0; jj < dim; ++jj) v(i * dim + jj) = scale * unitaries[k](jj, i);
    }
    j.noalias() += weights[k] * (v * v.adjoint());
  }
  return ChoiState(ch.site_dim(), ch.uses(), DensityMatrix(std::move(j)));
}

ChoiState choi_state(const CorrelatedDephasingChannel& ch) { return choi_state(ch.as_random_unitary()); }

double hashing_bound(const ChoiState& j) {
  return von_neumann_entropy(j.reference_marginal()) - von_neumann_entropy(j.state());
}

// ---- coherent information -------------------------------------------------

StateVector spectral_purification(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed in purification");
  const Index dim = rho.dim();
  check_dimension(static_cast<std::size_t>(dim * dim), "purification");
  ComplexVector psi = ComplexVector::Zero(dim * dim);
  for (Index i = 0; i < dim; ++i) {
    const double lambda = std::max(0.0, solver.eigenvalues()(i));
    psi.segment(i * dim, dim) = std::sqrt(lambda) * solver.eigenvectors().col(i);
  }
  return StateVector(std::move(psi));
}

double coherent_information(const RandomUnitaryChannel& ch, const StateVector& purification) {
  const Index dim = ch.dim();
  if (purification.dim() % dim != 0) throw InvalidArgument("purification dimension is not a multiple of the input");
  const Index ref = purification.dim() / dim;
  const Index dims[2] = {ref, dim};
  const Index keep[1] = {1};
  const DensityMatrix input = reduced_state(purification, dims, keep);

  // Psi(r, a) view of the purification; (I (x) U) psi  <->  Psi U^T.
  ComplexMatrix psi(ref, dim);
  for (Index r = 0; r < ref; ++r) {
    for (Index a = 0; a < dim; ++a) psi(r, a) = purification[r * dim + a];
  }
  ComplexMatrix joint = ComplexMatrix::Zero(ref * dim, ref * dim);
  const auto weights = ch.weights();
  const auto unitaries = ch.unitaries();
  ComplexVector w(ref * dim);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] == 0.0) continue;
    const ComplexMatrix rotated = psi * unitaries[k].transpose();
    for (Index r = 0; r < ref; ++r) {
      for (Index a = 0; a < dim; ++a) w(r * dim + a) = rotated(r, a);
    }
    joint.noalias() += weights[k] * (w * w.adjoint());
  }
  return von_neumann_entropy(ch.apply(input)) - von_neumann_entropy(DensityMatrix(std::move(joint)));
}

double coherent_information(const RandomUnitaryChannel& ch, const DensityMatrix& input) {
  if (input.dim() != ch.dim()) throw InvalidArgument("channel input has wrong dimension");
  return coherent_information(ch, spectral_purification(input));
}

double coherent_information(const CorrelatedDephasingChannel& ch, const DensityMatrix& input) {
  return coherent_information(ch.as_random_unitary(), input);
}

// ---- capacities -----------------------------------------------------------

Capacity capacity_from_rate(const EntropyRateResult& rate, int d) {
  if (d < 2) throw InvalidArgument("capacity needs d >= 2");
  Capacity out;
  const double raw = std::log2(static_cast<double>(d)) - rate.rate;
  out.floored = raw < 0.0;
  out.value = out.floored ? 0.0 : raw;
  out.transition_point = rate.transition_point;
  return out;
}

double random_unitary_lower_bound(const ProbabilityDistribution& weights, int d) {
  if (d < 2) throw InvalidArgument("lower bound needs d >= 2");
  return std::log2(static_cast<double>(d)) - shannon_entropy(weights) / weights.length();
}

}  // namespace memchan
