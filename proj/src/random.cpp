#include "memchan/random.hpp"

#include <cmath>

namespace memchan {

ComplexVector random_complex_vector(Rng& rng, Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex{re, im};
  }
  return v;
}

StateVector random_pure_state(Rng& rng, Index dim) { return StateVector(random_complex_vector(rng, dim)); }

DensityMatrix random_density(Rng& rng, Index dim) {
  ComplexMatrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) g.col(c) = random_complex_vector(rng, dim);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

ComplexMatrix random_unitary(Rng& rng, Index dim) {
  ComplexMatrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) g.col(c) = random_complex_vector(rng, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Rank1MpsEnv random_rank1_env(Rng& rng) {
  auto factor = [&]() {
    for (;;) {
      const ComplexVector u = random_complex_vector(rng, 2);
      const ComplexVector w = random_complex_vector(rng, 2);
      ComplexMatrix q = u * w.transpose();
      if (std::abs(q.trace()) > 0.2 * q.norm()) return q;
    }
  };
  ComplexMatrix q0 = factor();
  ComplexMatrix q1 = factor();
  return Rank1MpsEnv(std::move(q0), std::move(q1));
}

std::vector<double> random_simplex(Rng& rng, std::size_t size) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(size);
  double sum = 0.0;
  for (double& x : p) {
    x = expo(rng);
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

}  // namespace memchan
