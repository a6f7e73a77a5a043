#include "memchan/environments.hpp"

#include <cmath>
#include <string>

namespace memchan {

namespace {

std::size_t ring_states(int sites, std::string_view what) {
  if (sites < 1) throw InvalidArgument(std::string(what) + ": need at least one site");
  return checked_power(2, static_cast<std::size_t>(sites), what);
}

void check_rank_one(const ComplexMatrix& q, const char* name) {
  if (q.rows() != 2 || q.cols() != 2) throw InvalidArgument(std::string(name) + " must be 2x2");
  require_finite(q, name);
  Eigen::JacobiSVD<ComplexMatrix> svd(q);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0)) throw InvalidArgument(std::string(name) + " is the zero matrix");
  if (sv(1) >= 1e-10 * sv(0)) {
    throw InvalidArgument(std::string(name) + " is not rank 1 (singular values " + std::to_string(sv(0)) + ", " +
                          std::to_string(sv(1)) + ")");
  }
}

std::vector<int> bits_of(std::size_t index, int sites) {
  std::vector<int> bits(static_cast<std::size_t>(sites));
  for (int s = sites - 1; s >= 0; --s) {
    bits[static_cast<std::size_t>(s)] = static_cast<int>(index & 1U);
    index >>= 1U;
  }
  return bits;
}

// Stationarity plus normalization as one overdetermined system.
Eigen::VectorXd solve_stationary(const Eigen::MatrixXd& p) {
  const Index m = p.rows();
  if (m < 1 || p.cols() != m) throw InvalidArgument("transition matrix must be square and non-empty");
  Eigen::MatrixXd system(m + 1, m);
  system.topRows(m) = p.transpose() - Eigen::MatrixXd::Identity(m, m);
  system.row(m).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = 1.0;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system);
  if (cod.rank() < m) {
    throw InvalidArgument("transition matrix is reducible; supply the stationary distribution explicitly");
  }
  Eigen::VectorXd pi = cod.solve(rhs);
  for (Index i = 0; i < m; ++i) {
    if (pi(i) < 0.0 && pi(i) > -1e-12) pi(i) = 0.0;
  }
  return pi;
}

}  // namespace

// ---- constructors ---------------------------------------------------------

MarkovEnv::MarkovEnv(Eigen::MatrixXd transition)
    : MarkovEnv(transition, solve_stationary(transition)) {}

MarkovEnv::MarkovEnv(Eigen::MatrixXd transition, Eigen::VectorXd stationary)
    : p_(std::move(transition)), pi_(std::move(stationary)) {
  const Index m = p_.rows();
  if (m < 1 || p_.cols() != m) throw InvalidArgument("transition matrix must be square and non-empty");
  if (pi_.size() != m) throw InvalidArgument("stationary distribution has wrong length");
  if (!p_.allFinite() || !pi_.allFinite()) throw InvalidArgument("Markov environment has non-finite entries");
  if ((p_.array() < 0.0).any()) throw InvalidArgument("transition probabilities must be nonnegative");
  for (Index i = 0; i < m; ++i) {
    if (std::abs(p_.row(i).sum() - 1.0) > 1e-12) {
      throw InvalidArgument("row " + std::to_string(i) + " of the transition matrix does not sum to 1");
    }
  }
  if ((pi_.array() < 0.0).any() || std::abs(pi_.sum() - 1.0) > 1e-10) {
    throw InvalidArgument("stationary distribution must be nonnegative with unit sum");
  }
  const double drift = (pi_.transpose() * p_ - pi_.transpose()).cwiseAbs().maxCoeff();
  if (drift > 1e-10) throw InvalidArgument("distribution is not stationary (|pi P - pi| = " + std::to_string(drift) + ")");
}

MarkovEnv two_state_markov(double p01, double p10) {
  if (!(p01 >= 0.0 && p01 <= 1.0 && p10 >= 0.0 && p10 <= 1.0)) {
    throw InvalidArgument("two-state transition probabilities must lie in [0,1]");
  }
  Eigen::MatrixXd p(2, 2);
  p << 1.0 - p01, p01, p10, 1.0 - p10;
  if (p01 + p10 == 0.0) {
    // Frozen chain: every distribution is stationary; pick the symmetric one.
    return MarkovEnv(p, Eigen::VectorXd::Constant(2, 0.5));
  }
  Eigen::VectorXd pi(2);
  pi << p10 / (p01 + p10), p01 / (p01 + p10);
  return MarkovEnv(p, pi);
}

ClassicalIsingEnv::ClassicalIsingEnv(double coupling, double field, double beta)
    : coupling(coupling), field(field), beta(beta) {
  if (!std::isfinite(coupling) || !std::isfinite(field) || !std::isfinite(beta)) {
    throw InvalidArgument("Ising parameters must be finite");
  }
  if (!(beta > 0.0)) throw InvalidArgument("inverse temperature must be positive");
}

Rank1MpsEnv::Rank1MpsEnv(ComplexMatrix q0, ComplexMatrix q1) : q0_(std::move(q0)), q1_(std::move(q1)) {
  check_rank_one(q0_, "Q0");
  check_rank_one(q1_, "Q1");
}

DiagonalParams::DiagonalParams(double a, double b, double c) : a(a), b(b), c(c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) throw InvalidArgument("a, b, c must be finite");
  if (!(a > 0.0) || !(b > 0.0)) throw DegenerateEnvironment("a and b must be positive");
  if (c < 0.0) throw InvalidArgument("c must be nonnegative");
}

ExplicitEnv::ExplicitEnv(int sites, StateVector state, int site_dim)
    : sites_(sites), site_dim_(site_dim), state_(std::move(state)) {
  if (sites < 1 || site_dim < 2) throw InvalidArgument("explicit environment needs sites >= 1, site_dim >= 2");
  const auto dim = checked_power(static_cast<std::size_t>(site_dim), static_cast<std::size_t>(sites), "explicit env");
  if (static_cast<std::size_t>(std::get<StateVector>(state_).dim()) != dim) {
    throw InvalidArgument("explicit environment state has wrong dimension");
  }
}

ExplicitEnv::ExplicitEnv(int sites, DensityMatrix state, int site_dim)
    : sites_(sites), site_dim_(site_dim), state_(std::move(state)) {
  if (sites < 1 || site_dim < 2) throw InvalidArgument("explicit environment needs sites >= 1, site_dim >= 2");
  const auto dim = checked_power(static_cast<std::size_t>(site_dim), static_cast<std::size_t>(sites), "explicit env");
  if (static_cast<std::size_t>(std::get<DensityMatrix>(state_).dim()) != dim) {
    throw InvalidArgument("explicit environment state has wrong dimension");
  }
}

DensityMatrix ExplicitEnv::density() const {
  if (const auto* psi = std::get_if<StateVector>(&state_)) return DensityMatrix::pure(*psi);
  return std::get<DensityMatrix>(state_);
}

// ---- rank-1 MPS -----------------------------------------------------------

StateVector mps_state_vector(const Rank1MpsEnv& env, int sites) {
  if (sites < 2) throw InvalidArgument("MPS ring needs at least 2 sites");
  const std::size_t dim = ring_states(sites, "MPS state vector");
  ComplexVector amps(static_cast<Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    Eigen::Matrix2cd prod = Eigen::Matrix2cd::Identity();
    for (int s = sites - 1; s >= 0; --s) {
      const int bit = static_cast<int>((idx >> static_cast<unsigned>(sites - 1 - s)) & 1U);
      prod = env.q(bit) * prod;
    }
    amps(static_cast<Index>(idx)) = prod.trace();
  }
  if (amps.norm() < 1e-14) throw NullState("all configuration traces of the MPS vanish");
  return StateVector(std::move(amps));
}

DiagonalParams rank1_abc(const Rank1MpsEnv& env) {
  const double a = std::norm(env.q0().trace());
  const double b = std::norm(env.q1().trace());
  if (a < 1e-300 || b < 1e-300) {
    throw DegenerateEnvironment("rank-1 MPS with vanishing tr(Q0) or tr(Q1) has no (a,b,c) reduction");
  }
  const double c = std::norm((env.q0() * env.q1()).trace()) / (a * b);
  return {a, b, c};
}

int ring_boundaries(std::span<const int> bits) {
  int walls = 0;
  const std::size_t n = bits.size();
  for (std::size_t k = 0; k < n; ++k) walls += bits[k] != bits[(k + 1) % n] ? 1 : 0;
  return walls;
}

double diagonal_weight(const DiagonalParams& p, int zeros, int sites, int boundaries) {
  if (sites < 1 || zeros < 0 || zeros > sites) throw InvalidArgument("zero count outside [0, sites]");
  if (boundaries < 0 || boundaries % 2 != 0) {
    throw ParityViolation("a ring has an even number of domain walls, got " + std::to_string(boundaries));
  }
  const bool uniform = zeros == 0 || zeros == sites;
  if (uniform != (boundaries == 0) || boundaries > 2 * std::min(zeros, sites - zeros)) {
    throw InvalidArgument("no ring configuration has " + std::to_string(zeros) + " zeros and " +
                          std::to_string(boundaries) + " walls");
  }
  return std::pow(p.a, zeros) * std::pow(p.b, sites - zeros) * std::pow(p.c, boundaries / 2);
}

TransferMatrix transfer_matrix(const DiagonalParams& p) {
  const double off = std::sqrt(p.c * p.a * p.b);
  TransferMatrix t;
  t << p.a, off, off, p.b;
  return t;
}

double ring_partition_function(const TransferMatrix& t, int sites) {
  if (sites < 1) throw InvalidArgument("ring needs at least one site");
  TransferMatrix power = TransferMatrix::Identity();
  for (int i = 0; i < sites; ++i) power = power * t;
  return power.trace();
}

TransferMatrix ising_transfer_matrix(const ClassicalIsingEnv& env) {
  TransferMatrix t;
  const double spins[2] = {1.0, -1.0};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double bond = -env.coupling * spins[i] * spins[j] - env.field * (spins[i] + spins[j]) / 2.0;
      t(i, j) = std::exp(-env.beta * bond);
    }
  }
  return t;
}

// ---- wolf model --------------------------------------------------------------

Rank1MpsEnv wolf_env(double g) {
  if (!std::isfinite(g)) throw InvalidArgument("g must be finite");
  ComplexMatrix q0(2, 2);
  ComplexMatrix q1(2, 2);
  q0 << 0.0, 0.0, 1.0, 1.0;
  q1 << 1.0, g, 0.0, 0.0;
  return Rank1MpsEnv(std::move(q0), std::move(q1));
}

Eigen::MatrixXd wolf_hamiltonian(double g, int sites) {
  if (sites < 3) throw InvalidArgument("the three-site term needs a ring of at least 3 sites");
  const std::size_t dim = ring_states(sites, "wolf Hamiltonian");
  const double zz = 2.0 * (g * g - 1.0);
  const double x = -(1.0 + g) * (1.0 + g);
  const double zxz = (g - 1.0) * (g - 1.0);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto bits = bits_of(idx, sites);
    auto z = [&](int site) { return bits[static_cast<std::size_t>((site + sites) % sites)] == 0 ? 1.0 : -1.0; };
    double diag = 0.0;
    for (int i = 0; i < sites; ++i) {
      diag += zz * z(i) * z(i + 1);
      // X_i flips bit i; neighbor Z eigenvalues are untouched by the flip.
      const std::size_t flipped = idx ^ (std::size_t{1} << static_cast<unsigned>(sites - 1 - i));
      h(static_cast<Index>(flipped), static_cast<Index>(idx)) += x + zxz * z(i - 1) * z(i + 1);
    }
    h(static_cast<Index>(idx), static_cast<Index>(idx)) += diag;
  }
  return h;
}

// ---- dephased diagonals ---------------------------------------------------

ProbabilityDistribution dephased_diagonal(const ExplicitEnv& env) {
  std::vector<double> w;
  if (const auto* psi = std::get_if<StateVector>(&env.state())) {
    w.resize(static_cast<std::size_t>(psi->dim()));
    for (Index i = 0; i < psi->dim(); ++i) w[static_cast<std::size_t>(i)] = std::norm((*psi)[i]);
  } else {
    const auto& rho = std::get<DensityMatrix>(env.state());
    w.resize(static_cast<std::size_t>(rho.dim()));
    for (Index i = 0; i < rho.dim(); ++i) w[static_cast<std::size_t>(i)] = std::max(0.0, rho(i, i).real());
  }
  return ProbabilityDistribution::normalized(env.site_dim(), env.sites(), std::move(w));
}

ProbabilityDistribution dephased_diagonal(const Rank1MpsEnv& env, int sites) {
  const StateVector psi = mps_state_vector(env, sites);
  std::vector<double> w(static_cast<std::size_t>(psi.dim()));
  for (Index i = 0; i < psi.dim(); ++i) w[static_cast<std::size_t>(i)] = std::norm(psi[i]);
  return ProbabilityDistribution::normalized(2, sites, std::move(w));
}

ProbabilityDistribution dephased_diagonal(const DiagonalParams& p, int sites) {
  const std::size_t dim = ring_states(sites, "diagonal distribution");
  std::vector<double> w(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto bits = bits_of(idx, sites);
    int zeros = 0;
    for (int b : bits) zeros += b == 0 ? 1 : 0;
    w[idx] = diagonal_weight(p, zeros, sites, ring_boundaries(bits));
  }
  const double z = ring_partition_function(transfer_matrix(p), sites);
  for (double& x : w) x /= z;
  return ProbabilityDistribution::normalized(2, sites, std::move(w));
}

ProbabilityDistribution markov_diagonal(const MarkovEnv& env, int sites) {
  if (sites < 1) throw InvalidArgument("Markov diagonal needs at least one site");
  const int m = env.states();
  const std::size_t dim = checked_power(static_cast<std::size_t>(m), static_cast<std::size_t>(sites), "Markov diagonal");
  std::vector<double> w(dim);
  std::vector<int> s(static_cast<std::size_t>(sites));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rest = idx;
    for (int k = sites - 1; k >= 0; --k) {
      s[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(m));
      rest /= static_cast<std::size_t>(m);
    }
    double p = env.stationary()(s[0]);
    for (int k = 0; k + 1 < sites; ++k) p *= env.transition()(s[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(k) + 1]);
    w[idx] = p;
  }
  return ProbabilityDistribution::normalized(m, sites, std::move(w));
}

ProbabilityDistribution ising_diagonal(const ClassicalIsingEnv& env, int sites) {
  const std::size_t dim = ring_states(sites, "Ising diagonal");
  const TransferMatrix t = ising_transfer_matrix(env);
  std::vector<double> w(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto bits = bits_of(idx, sites);
    double p = 1.0;
    for (int k = 0; k < sites; ++k) p *= t(bits[static_cast<std::size_t>(k)], bits[static_cast<std::size_t>((k + 1) % sites)]);
    w[idx] = p;
  }
  return ProbabilityDistribution::normalized(2, sites, std::move(w));
}

ProbabilityDistribution diagonal_distribution(const Environment& env, int sites) {
  struct Visitor {
    int n;
    ProbabilityDistribution operator()(const MarkovEnv& e) const { return markov_diagonal(e, n); }
    ProbabilityDistribution operator()(const ClassicalIsingEnv& e) const { return ising_diagonal(e, n); }
    ProbabilityDistribution operator()(const Rank1MpsEnv& e) const { return dephased_diagonal(e, n); }
    ProbabilityDistribution operator()(const DiagonalParams& e) const { return dephased_diagonal(e, n); }
    ProbabilityDistribution operator()(const ExplicitEnv& e) const {
      if (e.sites() != n) {
        throw InvalidArgument("explicit environment has " + std::to_string(e.sites()) + " sites, requested " +
                              std::to_string(n));
      }
      return dephased_diagonal(e);
    }
  };
  return std::visit(Visitor{sites}, env);
}

}  // namespace memchan
