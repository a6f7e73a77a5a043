#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "memchan/entropy_rate.hpp"
#include "memchan/random.hpp"

using namespace memchan;

namespace {

double h2_wolf(double g) { return binary_entropy(std::abs(g) / (1.0 + std::abs(g))); }

// Entropy density from the exact derivative d ln(lambda)/d beta = v^T T' v / (lambda v^T v).
double hellmann_feynman_rate(const ClassicalIsingEnv& env) {
  const Eigen::Matrix2d t = ising_transfer_matrix(env);
  const double spins[2] = {1.0, -1.0};
  Eigen::Matrix2d dt;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double bond = -env.coupling * spins[i] * spins[j] - env.field * (spins[i] + spins[j]) / 2.0;
      dt(i, j) = -bond * t(i, j);
    }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(t);
  const double lambda = es.eigenvalues()(1);
  const Eigen::Vector2d v = es.eigenvectors().col(1);
  const double dlog = v.dot(dt * v) / (lambda * v.squaredNorm());
  return std::numbers::log2e * (std::log(lambda) - env.beta * dlog);
}

}  // namespace

TEST_CASE("transfer route reproduces the wolf closed form") {
  for (double g : {-2.0, -1.0, -0.37, -0.01, 0.01, 0.25, 1.0, 1.7}) {
    const auto r = entropy_rate_transfer(rank1_abc(wolf_env(g)));
    CHECK(r.route == RateRoute::transfer);
    CHECK(r.rate == doctest::Approx(h2_wolf(g)).epsilon(1e-12));
    CHECK_FALSE(r.transition_point);
    REQUIRE(r.perron.has_value());
  }
}

TEST_CASE("c = 0 is a transition point") {
  const auto r = entropy_rate_transfer(DiagonalParams(1.0, 1.0, 0.0));
  CHECK(r.transition_point);
  CHECK(r.rate == 0.0);
  CHECK_FALSE(r.perron.has_value());
  CHECK_THROWS_AS(perron_data(DiagonalParams(1.0, 1.0, 0.0)), DegenerateEnvironment);
}

TEST_CASE("Perron data against a generic eigensolver") {
  Rng rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const DiagonalParams p(std::exp(u(rng)), std::exp(u(rng)), std::exp(2.0 * u(rng)));
    const PerronData d = perron_data(p);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(transfer_matrix(p));
    CHECK(d.eigenvalue == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-13));
    CHECK(std::abs(d.right_vector.dot(es.eigenvectors().col(1))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((d.right_vector.array() > 0.0).all());
    CHECK(std::abs(d.stochastic.row(0).sum() - 1.0) < 1e-13);
    CHECK(std::abs(d.stochastic.row(1).sum() - 1.0) < 1e-13);
    const Eigen::RowVector2d pi = d.stationary.transpose();
    CHECK((pi * d.stochastic - pi).cwiseAbs().maxCoeff() < 1e-13);

    const MarkovEnv chain = perron_markov(p);
    CHECK(markov_entropy_rate(chain).rate == doctest::Approx(entropy_rate_transfer(p).rate).epsilon(1e-12));
  }
}

TEST_CASE("Perron vector is accurate when the field is extreme") {
  // a >> b and a << b stress the cancellation-free branch choice.
  for (const DiagonalParams& p : {DiagonalParams(1e6, 1.0, 1e-3), DiagonalParams(1.0, 1e6, 1e-3)}) {
    const PerronData d = perron_data(p);
    const Eigen::Vector2d tv = transfer_matrix(p) * d.right_vector;
    CHECK((tv - d.eigenvalue * d.right_vector).norm() <= 1e-12 * d.eigenvalue);
  }
}

TEST_CASE("thermo route against the Hellmann-Feynman derivative") {
  Rng rng(6);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 25; ++k) {
    const ClassicalIsingEnv env(u(rng), u(rng), 0.2 + std::abs(u(rng)));
    const double thermo = entropy_rate_thermo(env).rate;
    CHECK(thermo == doctest::Approx(hellmann_feynman_rate(env)).epsilon(1e-9));
    CHECK(entropy_rate_thermo(env).route == RateRoute::thermo);
  }
}

TEST_CASE("log partition density is ln lambda_max") {
  const ClassicalIsingEnv env(0.9, 0.2, 1.1);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(ising_transfer_matrix(env));
  CHECK(ising_log_partition_density(env) == doctest::Approx(std::log(es.eigenvalues()(1))));
  // Log domain survives couplings whose Boltzmann weights overflow.
  const ClassicalIsingEnv cold(400.0, 0.0, 2.0);
  CHECK(ising_log_partition_density(cold) == doctest::Approx(800.0));
  CHECK(std::isfinite(entropy_rate_thermo(cold).rate));
}

TEST_CASE("Ising and (a, b, c) parametrizations round-trip") {
  const ClassicalIsingEnv env(0.4, -0.7, 1.6);
  const DiagonalParams p = ising_to_params(env);
  const ClassicalIsingEnv back = params_to_ising(p, env.beta);
  CHECK(back.coupling == doctest::Approx(env.coupling));
  CHECK(back.field == doctest::Approx(env.field));

  const DiagonalParams scaled(5.0 * p.a, 5.0 * p.b, p.c);
  const ClassicalIsingEnv same = params_to_ising(scaled, env.beta);
  CHECK(same.coupling == doctest::Approx(env.coupling));
  CHECK(same.field == doctest::Approx(env.field));

  CHECK_THROWS_AS(params_to_ising(DiagonalParams(1.0, 1.0, 0.0), 1.0), DegenerateEnvironment);
  CHECK_THROWS_AS(params_to_ising(p, 0.0), InvalidArgument);
  CHECK(entropy_rate_transfer(p).rate == doctest::Approx(entropy_rate_thermo(env).rate).epsilon(1e-9));
}

TEST_CASE("Markov route") {
  for (double q : {0.0, 0.1, 0.5, 0.8}) {
    const auto r = markov_entropy_rate(two_state_markov(q, 1.0 - q));
    CHECK(r.rate == doctest::Approx(binary_entropy(q)));
    CHECK(r.route == RateRoute::markov);
  }
  CHECK(markov_entropy_rate(two_state_markov(0.0, 0.0)).rate == 0.0);
  const MarkovEnv m = two_state_markov(0.2, 0.3);
  const double expected = 0.6 * binary_entropy(0.2) + 0.4 * binary_entropy(0.3);
  CHECK(markov_entropy_rate(m).rate == doctest::Approx(expected));
}

TEST_CASE("brute route") {
  SUBCASE("i.i.d. chains give the exact rate at any size") {
    const std::vector<int> sizes{2, 3, 4};
    const auto r = entropy_rate_brute(two_state_markov(0.1, 0.9), sizes);
    CHECK(r.rate == doctest::Approx(binary_entropy(0.1)).epsilon(1e-12));
    CHECK(r.route == RateRoute::brute);
    CHECK(r.finite_sizes.size() == 3);
    CHECK(r.warnings.empty());
  }
  SUBCASE("open Markov chains give the exact rate too") {
    const std::vector<int> sizes{3, 4, 5};
    const MarkovEnv m = two_state_markov(0.2, 0.3);
    CHECK(entropy_rate_brute(m, sizes).rate == doctest::Approx(markov_entropy_rate(m).rate).epsilon(1e-12));
  }
  SUBCASE("N_max - 1 is inserted") {
    const std::vector<int> sizes{4, 6, 9};
    const auto r = entropy_rate_brute(DiagonalParams(1.0, 1.0, 0.5), sizes);
    REQUIRE(r.finite_sizes.size() == 4);
    CHECK(r.finite_sizes[2].first == 8);
  }
  SUBCASE("flat weights give one bit per site") {
    const std::vector<int> sizes{3, 4, 5};
    CHECK(entropy_rate_brute(DiagonalParams(1.0, 1.0, 1.0), sizes).rate == doctest::Approx(1.0));
  }
  SUBCASE("rank-1 MPS converges to the transfer route") {
    const std::vector<int> sizes{10, 12, 14};
    for (double g : {0.3, 0.5, 0.8}) {
      const auto r = entropy_rate_brute(wolf_env(g), sizes);
      CHECK(std::abs(r.rate - h2_wolf(g)) < 5e-3);
    }
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(entropy_rate_brute(DiagonalParams(1, 1, 1), std::vector<int>{3, 4}), InvalidArgument);
    CHECK_THROWS_AS(entropy_rate_brute(DiagonalParams(1, 1, 1), std::vector<int>{3, 5, 4}), InvalidArgument);
    CHECK_THROWS_AS(entropy_rate_brute(DiagonalParams(1, 1, 1), std::vector<int>{1, 2, 3}), InvalidArgument);
  }
}

TEST_CASE("route names") {
  CHECK(to_string(RateRoute::brute) == "brute");
  CHECK(to_string(RateRoute::transfer) == "transfer");
  CHECK(to_string(RateRoute::thermo) == "thermo");
  CHECK(to_string(RateRoute::markov) == "markov");
}
