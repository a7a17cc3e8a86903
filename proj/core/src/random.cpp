#include "hlp/random.hpp"

#include <cmath>

namespace hlp {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

BlockMatrix random_element(Rng& rng, const BlockProfile& profile) {
  BlockMatrix x(profile);
  for (std::size_t b = 0; b < profile.block_count(); ++b) x.block(b) = random_gaussian(rng, profile.dim(b), profile.dim(b));
  return x;
}

BlockMatrix random_hermitian(Rng& rng, const BlockProfile& profile) {
  return symmetrize(random_element(rng, profile));
}

Matrix random_unitary(Rng& rng, int n) {
  const Matrix g = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

BlockMatrix random_unitary(Rng& rng, const BlockProfile& profile) {
  BlockMatrix u(profile);
  for (std::size_t b = 0; b < profile.block_count(); ++b) u.block(b) = random_unitary(rng, profile.dim(b));
  return u;
}

BlockMatrix random_density(Rng& rng, const BlockProfile& profile, double min_eig, bool state) {
  std::uniform_real_distribution<double> uniform(min_eig, 1.0);
  BlockMatrix rho(profile);
  for (std::size_t b = 0; b < profile.block_count(); ++b) {
    const int n = profile.dim(b);
    const Matrix v = random_unitary(rng, n);
    RealVector lambda(n);
    for (int k = 0; k < n; ++k) lambda(k) = uniform(rng);
    rho.block(b) = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
    rho.block(b) = 0.5 * (rho.block(b) + rho.block(b).adjoint()).eval();
  }
  if (state) rho *= 1.0 / rho.trace().real();
  return rho;
}

}  // namespace hlp
