#include "memchan/entropy_rate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace memchan {

namespace {

double row_entropy_rate(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi) {
  double rate = 0.0;
  for (Index i = 0; i < p.rows(); ++i) {
    double row = 0.0;
    for (Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) > 0.0) row -= p(i, j) * std::log2(p(i, j));
    }
    rate += pi(i) * row;
  }
  return rate;
}

// ln of the largest eigenvalue of [[e^la, e^lo], [e^lo, e^lb]].
double log_perron_symmetric(double la, double lb, double lo) {
  const double shift = std::max({la, lb, lo});
  const double a = std::exp(la - shift);
  const double b = std::exp(lb - shift);
  const double o = std::exp(lo - shift);
  const double half_gap = 0.5 * (a - b);
  return shift + std::log(0.5 * (a + b) + std::hypot(half_gap, o));
}

}  // namespace

std::string_view to_string(RateRoute route) {
  switch (route) {
    case RateRoute::brute: return "brute";
    case RateRoute::transfer: return "transfer";
    case RateRoute::thermo: return "thermo";
    case RateRoute::markov: return "markov";
  }
  return "unknown";
}

EntropyRateResult entropy_rate_brute(const Environment& env, std::span<const int> sizes) {
  if (sizes.size() < 3) throw InvalidArgument("brute-force rate needs at least three system sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw InvalidArgument("system sizes must be strictly increasing");
  }
  if (sizes.front() < 2) throw InvalidArgument("system sizes must be at least 2");

  std::vector<int> grid(sizes.begin(), sizes.end());
  const int largest = grid.back();
  if (grid[grid.size() - 2] != largest - 1) grid.insert(grid.end() - 1, largest - 1);

  EntropyRateResult out;
  out.route = RateRoute::brute;
  for (int n : grid) out.finite_sizes.emplace_back(n, shannon_entropy(diagonal_distribution(env, n)));
  for (std::size_t i = 1; i < out.finite_sizes.size(); ++i) {
    if (out.finite_sizes[i].second < out.finite_sizes[i - 1].second - 1e-12) {
      out.warnings.push_back("S_N decreases between N=" + std::to_string(out.finite_sizes[i - 1].first) +
                             " and N=" + std::to_string(out.finite_sizes[i].first));
    }
  }
  const auto& last = out.finite_sizes.back();
  const auto& prev = out.finite_sizes[out.finite_sizes.size() - 2];
  out.rate = last.second - prev.second;
  return out;
}

PerronData perron_data(const DiagonalParams& p) {
  if (!(p.c > 0.0)) throw DegenerateEnvironment("Perron construction needs c > 0");
  const TransferMatrix t = transfer_matrix(p);
  const double o = t(0, 1);
  const double half_gap = 0.5 * (p.a - p.b);
  const double root = std::hypot(half_gap, o);
  const double lambda = 0.5 * (p.a + p.b) + root;
  // (lambda - a)(lambda - b) = o^2; take the component without cancellation.
  Eigen::Vector2d v;
  if (p.a >= p.b) {
    v << half_gap + root, o;
  } else {
    v << o, root - half_gap;
  }
  v.normalize();

  PerronData out{lambda, v, Eigen::Matrix2d{}, Eigen::Vector2d{}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.stochastic(i, j) = t(i, j) * v(j) / (lambda * v(i));
  }
  // T is symmetric, so the left Perron vector equals v and pi_i ~ v_i^2.
  out.stationary = v.cwiseProduct(v);
  out.stationary /= out.stationary.sum();
  return out;
}

MarkovEnv perron_markov(const DiagonalParams& p) {
  const PerronData d = perron_data(p);
  Eigen::MatrixXd m = d.stochastic;
  // Rows sum to one up to roundoff; renormalize so the MarkovEnv invariant holds at 1e-12.
  for (Index i = 0; i < 2; ++i) m.row(i) /= m.row(i).sum();
  return MarkovEnv(m, Eigen::VectorXd(d.stationary));
}

EntropyRateResult entropy_rate_transfer(const DiagonalParams& p) {
  EntropyRateResult out;
  out.route = RateRoute::transfer;
  if (p.c == 0.0) {
    // Only the two uniform configurations survive; their entropy stays at one bit.
    out.rate = 0.0;
    out.transition_point = true;
    return out;
  }
  PerronData d = perron_data(p);
  out.rate = row_entropy_rate(d.stochastic, d.stationary);
  out.perron = std::move(d);
  return out;
}

double ising_log_partition_density(const ClassicalIsingEnv& env) {
  const double bj = env.beta * env.coupling;
  const double bh = env.beta * env.field;
  return log_perron_symmetric(bj + bh, bj - bh, -bj);
}

EntropyRateResult entropy_rate_thermo(const ClassicalIsingEnv& env) {
  auto f = [&](double beta) {
    return ising_log_partition_density(ClassicalIsingEnv(env.coupling, env.field, beta));
  };
  const double beta = env.beta;
  const double step = 1e-5 * beta;
  if (!(step > 0.0) || beta - step == beta || beta + step / 2 == beta) {
    throw NumericalError("inverse-temperature step underflows at beta = " + std::to_string(beta));
  }
  auto central = [&](double h) { return (f(beta + h) - f(beta - h)) / (2.0 * h); };
  const double coarse = central(step);
  const double fine = central(step / 2.0);
  const double derivative = (4.0 * fine - coarse) / 3.0;

  EntropyRateResult out;
  out.route = RateRoute::thermo;
  const double nats = f(beta) - beta * derivative;
  out.rate = std::numbers::log2e * nats;
  return out;
}

EntropyRateResult markov_entropy_rate(const MarkovEnv& env) {
  EntropyRateResult out;
  out.route = RateRoute::markov;
  out.rate = row_entropy_rate(env.transition(), env.stationary());
  return out;
}

DiagonalParams ising_to_params(const ClassicalIsingEnv& env) {
  const double bj = env.beta * env.coupling;
  const double bh = env.beta * env.field;
  return {std::exp(bj + bh), std::exp(bj - bh), std::exp(-4.0 * bj)};
}

ClassicalIsingEnv params_to_ising(const DiagonalParams& p, double beta) {
  if (p.c == 0.0) {
    throw DegenerateEnvironment("c = 0 has no finite Ising image (beta J -> infinity)");
  }
  if (!(beta > 0.0)) throw InvalidArgument("inverse temperature must be positive");
  const double coupling = -std::log(p.c) / (4.0 * beta);
  const double field = std::log(p.a / p.b) / (2.0 * beta);
  return {coupling, field, beta};
}

}  // namespace memchan
