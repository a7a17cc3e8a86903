#pragma once

// Dense complex block-matrix kernel: the carrier for algebra elements, L^p
// elements, densities and projections of a finite direct sum of matrix blocks.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "hlp/exponent.hpp"

namespace hlp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Block sizes n_1..n_k of the algebra M_{n_1} (+) ... (+) M_{n_k}.
class BlockProfile {
 public:
  BlockProfile() = default;
  explicit BlockProfile(std::vector<int> dims);
  BlockProfile(std::initializer_list<int> dims) : BlockProfile(std::vector<int>(dims)) {}

  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t block_count() const noexcept { return dims_.size(); }
  int dim(std::size_t block) const { return dims_.at(block); }
  /// Sum of block sizes (size of the block-diagonal dense matrix).
  int total_dim() const noexcept;
  /// Sum of squared block sizes (complex dimension of the algebra).
  int carrier_dim() const noexcept;

  friend bool operator==(const BlockProfile&, const BlockProfile&) = default;

 private:
  std::vector<int> dims_;
};

std::ostream& operator<<(std::ostream& os, const BlockProfile& profile);

/// Element of a block-diagonal matrix algebra.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  /// Zero element.
  explicit BlockMatrix(BlockProfile profile);
  BlockMatrix(BlockProfile profile, std::vector<Matrix> blocks);

  static BlockMatrix zero(const BlockProfile& profile) { return BlockMatrix(profile); }
  static BlockMatrix identity(const BlockProfile& profile);
  /// e_{row,col} inside the given block.
  static BlockMatrix unit(const BlockProfile& profile, std::size_t block, int row, int col);
  /// Block-diagonal element with the given diagonal entries (length total_dim).
  static BlockMatrix diagonal(const BlockProfile& profile, const std::vector<double>& entries);
  /// Inverse of to_vector().
  static BlockMatrix from_vector(const BlockProfile& profile, const Vector& coords);
  /// Hilbert-Schmidt orthonormal basis of matrix units, in to_vector() order.
  static std::vector<BlockMatrix> unit_basis(const BlockProfile& profile);

  const BlockProfile& profile() const noexcept { return profile_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const Matrix& block(std::size_t i) const { return blocks_.at(i); }
  Matrix& block(std::size_t i) { return blocks_.at(i); }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

  BlockMatrix adjoint() const;
  BlockMatrix transpose() const;
  Complex trace() const;
  /// Largest absolute entry.
  double max_abs() const;
  /// Frobenius (Hilbert-Schmidt) norm.
  double frobenius() const;
  /// Column-major coordinates of each block, blocks concatenated.
  Vector to_vector() const;
  /// Block-diagonal dense matrix of size total_dim.
  Matrix dense() const;

  BlockMatrix& operator+=(const BlockMatrix& other);
  BlockMatrix& operator-=(const BlockMatrix& other);
  BlockMatrix& operator*=(Complex s);

  friend BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) { return a += b; }
  friend BlockMatrix operator-(BlockMatrix a, const BlockMatrix& b) { return a -= b; }
  friend BlockMatrix operator*(BlockMatrix a, Complex s) { return a *= s; }
  friend BlockMatrix operator*(Complex s, BlockMatrix a) { return a *= s; }
  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);
  BlockMatrix operator-() const;

 private:
  BlockProfile profile_;
  std::vector<Matrix> blocks_;
};

std::ostream& operator<<(std::ostream& os, const BlockMatrix& x);

/// Throws ProfileMismatch unless the two profiles agree.
void require_same_profile(const BlockProfile& a, const BlockProfile& b, const char* where);

/// Hilbert-Schmidt inner product tr(a* b).
Complex hs_inner(const BlockMatrix& a, const BlockMatrix& b);

/// Eigen-decomposition of a Hermitian block matrix: ascending eigenvalues per
/// block and a unitary of eigenvectors (columns).
struct EigenDecomposition {
  std::vector<RealVector> values;
  BlockMatrix vectors;
};

/// Default absolute Hermiticity tolerance; a relative 1e-10 * ||H|| is added.
inline constexpr double kHermitianTol = 1e-8;

/// max |H - H*| entrywise.
double hermitian_residual(const BlockMatrix& h);
/// (H + H*)/2.
BlockMatrix symmetrize(const BlockMatrix& h);
bool is_hermitian(const BlockMatrix& h, double tol = kHermitianTol);

/// Cyclic Jacobi eigen-decomposition of a dense Hermitian matrix. The input is
/// taken as exactly Hermitian (upper triangle is read).
void jacobi_eigen(const Matrix& h, RealVector& values, Matrix& vectors);

/// One-sided (Hestenes) Jacobi SVD of a dense square matrix: x = U diag(s) V*,
/// singular values unsorted, left vectors of zero columns set to zero.
void jacobi_svd(const Matrix& x, RealVector& sigma, Matrix& left, Matrix& right);

/// Throws NotHermitian if the input is not Hermitian within tol (plus 1e-10 relative).
EigenDecomposition hermitian_eig(const BlockMatrix& h, double tol = kHermitianTol);

/// f applied to the spectrum of a Hermitian element.
BlockMatrix spectral_apply(const BlockMatrix& h, const std::function<Complex(double)>& f,
                           double tol = kHermitianTol);

/// P^t for positive semidefinite P with the convention 0^t = 0 on the kernel;
/// t = 0 gives the support projection. Throws NotPSD / SingularNegativePower.
BlockMatrix frac_power(const BlockMatrix& p, double t);

/// P^{it} on the support of P (0 on the kernel); unitary when P is invertible.
BlockMatrix imaginary_power(const BlockMatrix& p, double t);

/// Spectral projection of a positive element onto eigenvalues above
/// relative_cutoff * ||P||_inf.
BlockMatrix support_projection(const BlockMatrix& p, double relative_cutoff = 1e-12);

/// Singular values of all blocks, descending within the whole element.
std::vector<double> singular_values(const BlockMatrix& x);

/// Schatten p-norm over all blocks; p = inf is the operator norm.
double schatten_norm(const BlockMatrix& x, const Exponent& p);
double operator_norm(const BlockMatrix& x);

struct Polar {
  BlockMatrix u;    ///< partial isometry, u*u = support of |x|
  BlockMatrix abs;  ///< |x| = (x*x)^{1/2}
};

Polar polar(const BlockMatrix& x);

/// Smallest eigenvalue over all blocks of a Hermitian element.
double min_eigenvalue(const BlockMatrix& h);
double max_eigenvalue(const BlockMatrix& h);

}  // namespace hlp
