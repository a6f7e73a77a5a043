#include <doctest.h>

#include <cmath>
#include <numbers>

#include "memchan/numerics.hpp"
#include "memchan/random.hpp"
#include "support.hpp"

using namespace memchan;
using memchan::test::CapGuard;
using memchan::test::max_abs_diff;

TEST_CASE("kron follows the index formula") {
  Rng rng(11);
  const ComplexMatrix a = random_unitary(rng, 3);
  const ComplexMatrix b = ComplexMatrix::Random(2, 4);
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 12);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index p = 0; p < 2; ++p)
        for (Index q = 0; q < 4; ++q) CHECK(std::abs(k(i * 2 + p, j * 4 + q) - a(i, j) * b(p, q)) < 1e-15);

  const ComplexVector u = random_complex_vector(rng, 3);
  const ComplexVector v = random_complex_vector(rng, 2);
  const ComplexVector uv = kron(u, v);
  for (Index i = 0; i < 3; ++i)
    for (Index p = 0; p < 2; ++p) CHECK(std::abs(uv(i * 2 + p) - u(i) * v(p)) < 1e-15);
}

TEST_CASE("state vectors normalize and reject null input") {
  ComplexVector v(2);
  v << Complex{3.0, 0.0}, Complex{0.0, 4.0};
  const StateVector psi(v);
  CHECK(psi.amplitudes().norm() == doctest::Approx(1.0));
  CHECK(std::abs(psi[1] - Complex{0.0, 0.8}) < 1e-15);
  CHECK_THROWS_AS(StateVector(ComplexVector::Zero(4)), NullState);
  CHECK_THROWS_AS(StateVector(ComplexVector::Constant(2, Complex{1e-15, 0.0})), NullState);
  CHECK_THROWS_AS(StateVector{ComplexVector{}}, InvalidArgument);
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(DensityMatrix{m});

  SUBCASE("not Hermitian") {
    m(0, 1) = Complex{0.1, 0.0};
    CHECK_THROWS_AS(DensityMatrix{m}, InvalidArgument);
  }
  SUBCASE("wrong trace") { CHECK_THROWS_AS(DensityMatrix{ComplexMatrix(2.0 * m)}, InvalidArgument); }
  SUBCASE("negative eigenvalue") {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 1.1;
    bad(1, 1) = -0.1;
    CHECK_THROWS_AS(DensityMatrix{bad}, InvalidArgument);
  }
  SUBCASE("roundoff-size negative eigenvalue is accepted") {
    ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
    tiny(0, 0) = 1.0 + 1e-11;
    tiny(1, 1) = -1e-11;
    const DensityMatrix rho{tiny};
    CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("non-square") { CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::Zero(2, 3)}, InvalidArgument); }
}

TEST_CASE("probability distributions") {
  const ProbabilityDistribution p(3, 2, {0.1, 0.0, 0.2, 0.0, 0.3, 0.0, 0.1, 0.2, 0.1});
  CHECK(p.size() == 9);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.index_of(p.digits(i)) == i);
  CHECK(p.digits(5) == std::vector<int>{1, 2});  // site 0 most significant
  CHECK_THROWS_AS(ProbabilityDistribution(2, 1, {0.5, 0.6}), InvalidArgument);
  CHECK_THROWS_AS(ProbabilityDistribution(2, 1, {1.5, -0.5}), InvalidArgument);
  CHECK_THROWS_AS(ProbabilityDistribution(2, 2, {1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(ProbabilityDistribution::normalized(2, 1, {0.0, 0.0}), NullState);
  const auto q = ProbabilityDistribution::normalized(2, 1, {1.0, 3.0});
  CHECK(q[1] == doctest::Approx(0.75));
}

TEST_CASE("partial trace against explicit index sums") {
  Rng rng(5);
  const std::vector<Index> dims{2, 3, 2};
  const DensityMatrix rho = random_density(rng, 12);
  auto at = [&](Index i0, Index i1, Index i2, Index j0, Index j1, Index j2) {
    return rho(i0 * 6 + i1 * 2 + i2, j0 * 6 + j1 * 2 + j2);
  };

  const std::vector<Index> keep_outer{0, 2};
  const DensityMatrix outer = partial_trace(rho, dims, keep_outer);
  REQUIRE(outer.dim() == 4);
  double err = 0.0;
  for (Index a = 0; a < 2; ++a)
    for (Index c = 0; c < 2; ++c)
      for (Index a2 = 0; a2 < 2; ++a2)
        for (Index c2 = 0; c2 < 2; ++c2) {
          Complex acc{0.0, 0.0};
          for (Index b = 0; b < 3; ++b) acc += at(a, b, c, a2, b, c2);
          err = std::max(err, std::abs(outer(a * 2 + c, a2 * 2 + c2) - acc));
        }
  CHECK(err < 1e-14);

  const std::vector<Index> keep_middle{1};
  const DensityMatrix middle = partial_trace(rho, dims, keep_middle);
  err = 0.0;
  for (Index b = 0; b < 3; ++b)
    for (Index b2 = 0; b2 < 3; ++b2) {
      Complex acc{0.0, 0.0};
      for (Index a = 0; a < 2; ++a)
        for (Index c = 0; c < 2; ++c) acc += at(a, b, c, a, b2, c);
      err = std::max(err, std::abs(middle(b, b2) - acc));
    }
  CHECK(err < 1e-14);

  const std::vector<Index> bad_keep{3};
  CHECK_THROWS_AS(partial_trace(rho, dims, bad_keep), InvalidArgument);
  const std::vector<Index> dup_keep{1, 1};
  CHECK_THROWS_AS(partial_trace(rho, dims, dup_keep), InvalidArgument);
  const std::vector<Index> bad_dims{2, 2};
  CHECK_THROWS_AS(partial_trace(rho, bad_dims, keep_middle), InvalidArgument);
}

TEST_CASE("reduced state of a pure state matches the partial trace of its projector") {
  Rng rng(8);
  const std::vector<Index> dims{2, 2, 2, 2};
  const StateVector psi = random_pure_state(rng, 16);
  const DensityMatrix full = DensityMatrix::pure(psi);
  for (const std::vector<Index>& keep : {std::vector<Index>{0}, {1, 3}, {0, 1, 2}, {2}}) {
    CHECK(max_abs_diff(reduced_state(psi, dims, keep).matrix(), partial_trace(full, dims, keep).matrix()) < 1e-14);
  }
}

TEST_CASE("entropies") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.1) == doctest::Approx(-0.1 * std::log2(0.1) - 0.9 * std::log2(0.9)));
  CHECK_THROWS_AS(binary_entropy(1.5), InvalidArgument);

  const std::vector<double> probs{0.5, 0.25, 0.125, 0.125};
  CHECK(shannon_entropy(probs) == doctest::Approx(1.75));
  CHECK(von_neumann_entropy(DensityMatrix::diagonal(probs)) == doctest::Approx(1.75));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(8)) == doctest::Approx(3.0));

  // Entropy is basis independent.
  Rng rng(3);
  const ComplexMatrix u = random_unitary(rng, 4);
  const DensityMatrix rotated(ComplexMatrix(u * DensityMatrix::diagonal(probs).matrix() * u.adjoint()));
  CHECK(von_neumann_entropy(rotated) == doctest::Approx(1.75).epsilon(1e-12));

  // Bell state: pure globally, maximally mixed halves.
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0;
  const StateVector psi(bell);
  const std::vector<Index> dims{2, 2};
  const std::vector<Index> keep{0};
  CHECK(von_neumann_entropy(DensityMatrix::pure(psi)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(reduced_state(psi, dims, keep)) == doctest::Approx(1.0));
}

TEST_CASE("trace norm") {
  ComplexVector e0 = ComplexVector::Zero(2);
  ComplexVector e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CHECK(trace_norm_distance(DensityMatrix::pure(StateVector(e0)), DensityMatrix::pure(StateVector(e1))) ==
        doctest::Approx(2.0));

  Rng rng(9);
  const DensityMatrix a = random_density(rng, 5);
  const DensityMatrix b = random_density(rng, 5);
  const ComplexMatrix diff = a.matrix() - b.matrix();
  Eigen::JacobiSVD<ComplexMatrix> svd(diff);
  CHECK(trace_norm(diff) == doctest::Approx(svd.singularValues().sum()).epsilon(1e-12));
  CHECK(trace_norm_distance(a, a) == doctest::Approx(0.0));

  const ComplexMatrix rect = ComplexMatrix::Random(3, 2);
  Eigen::JacobiSVD<ComplexMatrix> rsvd(rect);
  CHECK(trace_norm(rect) == doctest::Approx(rsvd.singularValues().sum()));
  CHECK_THROWS_AS(trace_norm_distance(a, DensityMatrix::maximally_mixed(4)), InvalidArgument);
}

TEST_CASE("dephase and tensor power") {
  Rng rng(2);
  const DensityMatrix rho = random_density(rng, 3);
  const DensityMatrix diag = dephase(rho);
  CHECK(std::abs(diag(0, 1)) == 0.0);
  CHECK(std::abs(diag(2, 2) - rho(2, 2)) < 1e-15);

  const DensityMatrix cube = tensor_power(rho, 3);
  CHECK(max_abs_diff(cube.matrix(), kron(kron(rho.matrix(), rho.matrix()), rho.matrix())) < 1e-15);
  CHECK_THROWS_AS(tensor_power(rho, 0), InvalidArgument);
}

TEST_CASE("dimension cap") {
  CapGuard guard(16);
  CHECK(dimension_cap() == 16);
  CHECK_NOTHROW(check_dimension(16, "x"));
  CHECK_THROWS_AS(check_dimension(17, "x"), DimensionCapExceeded);
  CHECK(checked_power(2, 4, "x") == 16);
  CHECK_THROWS_AS(checked_power(2, 5, "x"), DimensionCapExceeded);
  CHECK_THROWS_AS(kron(ComplexMatrix(ComplexMatrix::Identity(4, 4)), ComplexMatrix(ComplexMatrix::Identity(8, 8))), DimensionCapExceeded);
  CHECK_THROWS_AS(set_dimension_cap(0), InvalidArgument);
}

TEST_CASE("non-finite matrices are rejected") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(require_finite(m, "m"), InvalidArgument);
}
