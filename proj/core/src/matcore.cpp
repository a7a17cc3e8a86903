#include "hlp/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hlp/error.hpp"

namespace hlp {

namespace {

double max_abs_eigen(const std::vector<RealVector>& values) {
  double m = 0.0;
  for (const auto& v : values) {
    if (v.size() > 0) m = std::max(m, v.cwiseAbs().maxCoeff());
  }
  return m;
}

}  // namespace

BlockProfile::BlockProfile(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::InvalidArgument, "block profile must have at least one block");
  for (int d : dims_) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "block dimensions must be >= 1");
  }
}

int BlockProfile::total_dim() const noexcept { return std::accumulate(dims_.begin(), dims_.end(), 0); }

int BlockProfile::carrier_dim() const noexcept {
  int n = 0;
  for (int d : dims_) n += d * d;
  return n;
}

std::ostream& operator<<(std::ostream& os, const BlockProfile& profile) {
  os << "[";
  for (std::size_t i = 0; i < profile.block_count(); ++i) os << (i ? "," : "") << profile.dim(i);
  return os << "]";
}

BlockMatrix::BlockMatrix(BlockProfile profile) : profile_(std::move(profile)) {
  blocks_.reserve(profile_.block_count());
  for (int d : profile_.dims()) blocks_.push_back(Matrix::Zero(d, d));
}

BlockMatrix::BlockMatrix(BlockProfile profile, std::vector<Matrix> blocks)
    : profile_(std::move(profile)), blocks_(std::move(blocks)) {
  if (blocks_.size() != profile_.block_count()) {
    throw Error(ErrorCode::ProfileMismatch, "block count does not match profile");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].rows() != profile_.dim(i) || blocks_[i].cols() != profile_.dim(i)) {
      throw Error(ErrorCode::ProfileMismatch, "block " + std::to_string(i) + " has the wrong size");
    }
  }
}

BlockMatrix BlockMatrix::identity(const BlockProfile& profile) {
  BlockMatrix x(profile);
  for (auto& b : x.blocks_) b.setIdentity();
  return x;
}

BlockMatrix BlockMatrix::unit(const BlockProfile& profile, std::size_t block, int row, int col) {
  BlockMatrix x(profile);
  x.block(block)(row, col) = 1.0;
  return x;
}

BlockMatrix BlockMatrix::diagonal(const BlockProfile& profile, const std::vector<double>& entries) {
  if (static_cast<int>(entries.size()) != profile.total_dim()) {
    throw Error(ErrorCode::ProfileMismatch, "diagonal length does not match profile");
  }
  BlockMatrix x(profile);
  std::size_t k = 0;
  for (auto& b : x.blocks_) {
    for (int i = 0; i < b.rows(); ++i) b(i, i) = entries[k++];
  }
  return x;
}

BlockMatrix BlockMatrix::from_vector(const BlockProfile& profile, const Vector& coords) {
  if (coords.size() != profile.carrier_dim()) {
    throw Error(ErrorCode::ProfileMismatch, "coordinate vector does not match profile");
  }
  BlockMatrix x(profile);
  Eigen::Index offset = 0;
  for (auto& b : x.blocks_) {
    const Eigen::Index n = b.size();
    b = Eigen::Map<const Matrix>(coords.data() + offset, b.rows(), b.cols());
    offset += n;
  }
  return x;
}

std::vector<BlockMatrix> BlockMatrix::unit_basis(const BlockProfile& profile) {
  std::vector<BlockMatrix> basis;
  basis.reserve(profile.carrier_dim());
  for (std::size_t b = 0; b < profile.block_count(); ++b) {
    const int n = profile.dim(b);
    for (int col = 0; col < n; ++col) {
      for (int row = 0; row < n; ++row) basis.push_back(unit(profile, b, row, col));
    }
  }
  return basis;
}

BlockMatrix BlockMatrix::adjoint() const {
  BlockMatrix x(profile_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) x.blocks_[i] = blocks_[i].adjoint();
  return x;
}

BlockMatrix BlockMatrix::transpose() const {
  BlockMatrix x(profile_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) x.blocks_[i] = blocks_[i].transpose();
  return x;
}

Complex BlockMatrix::trace() const {
  Complex t = 0.0;
  for (const auto& b : blocks_) t += b.trace();
  return t;
}

double BlockMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& b : blocks_) {
    if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
  }
  return m;
}

double BlockMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

Vector BlockMatrix::to_vector() const {
  Vector v(profile_.carrier_dim());
  Eigen::Index offset = 0;
  for (const auto& b : blocks_) {
    v.segment(offset, b.size()) = Eigen::Map<const Vector>(b.data(), b.size());
    offset += b.size();
  }
  return v;
}

Matrix BlockMatrix::dense() const {
  const int n = profile_.total_dim();
  Matrix d = Matrix::Zero(n, n);
  int offset = 0;
  for (const auto& b : blocks_) {
    d.block(offset, offset, b.rows(), b.cols()) = b;
    offset += static_cast<int>(b.rows());
  }
  return d;
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& other) {
  require_same_profile(profile_, other.profile_, "addition");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

BlockMatrix& BlockMatrix::operator-=(const BlockMatrix& other) {
  require_same_profile(profile_, other.profile_, "subtraction");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

BlockMatrix& BlockMatrix::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  require_same_profile(a.profile_, b.profile_, "product");
  BlockMatrix x(a.profile_);
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) x.blocks_[i].noalias() = a.blocks_[i] * b.blocks_[i];
  return x;
}

BlockMatrix BlockMatrix::operator-() const {
  BlockMatrix x(*this);
  x *= -1.0;
  return x;
}

std::ostream& operator<<(std::ostream& os, const BlockMatrix& x) {
  os << "BlockMatrix" << x.profile() << "\n";
  for (std::size_t i = 0; i < x.block_count(); ++i) os << x.block(i) << "\n";
  return os;
}

void require_same_profile(const BlockProfile& a, const BlockProfile& b, const char* where) {
  if (a == b) return;
  std::ostringstream os;
  os << where << ": profiles " << a << " and " << b << " differ";
  throw Error(ErrorCode::ProfileMismatch, os.str());
}

Complex hs_inner(const BlockMatrix& a, const BlockMatrix& b) {
  require_same_profile(a.profile(), b.profile(), "hs_inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.block_count(); ++i) {
    s += (a.block(i).adjoint() * b.block(i)).trace();
  }
  return s;
}

double hermitian_residual(const BlockMatrix& h) {
  double m = 0.0;
  for (const auto& b : h.blocks()) {
    if (b.size() > 0) m = std::max(m, (b - b.adjoint()).cwiseAbs().maxCoeff());
  }
  return m;
}

BlockMatrix symmetrize(const BlockMatrix& h) {
  BlockMatrix s(h.profile());
  for (std::size_t i = 0; i < h.block_count(); ++i) s.block(i) = 0.5 * (h.block(i) + h.block(i).adjoint());
  return s;
}

bool is_hermitian(const BlockMatrix& h, double tol) {
  return hermitian_residual(h) <= tol + 1e-10 * h.max_abs();
}

EigenDecomposition hermitian_eig(const BlockMatrix& h, double tol) {
  const double res = hermitian_residual(h);
  if (res > tol + 1e-10 * h.max_abs()) {
    throw Error(ErrorCode::NotHermitian, "||H - H*|| = " + std::to_string(res));
  }
  const BlockMatrix s = symmetrize(h);
  EigenDecomposition out{{}, BlockMatrix(h.profile())};
  out.values.resize(h.block_count());
  for (std::size_t i = 0; i < h.block_count(); ++i) {
    jacobi_eigen(s.block(i), out.values[i], out.vectors.block(i));
  }
  return out;
}

BlockMatrix spectral_apply(const BlockMatrix& h, const std::function<Complex(double)>& f, double tol) {
  const EigenDecomposition eig = hermitian_eig(h, tol);
  BlockMatrix out(h.profile());
  for (std::size_t i = 0; i < h.block_count(); ++i) {
    const Matrix& v = eig.vectors.block(i);
    Vector fd(eig.values[i].size());
    for (Eigen::Index k = 0; k < fd.size(); ++k) fd(k) = f(eig.values[i](k));
    out.block(i) = v * fd.asDiagonal() * v.adjoint();
  }
  return out;
}

BlockMatrix frac_power(const BlockMatrix& p, double t) {
  const EigenDecomposition eig = hermitian_eig(p);
  const double scale = max_abs_eigen(eig.values);
  const double kernel = 1e-12 * scale;
  BlockMatrix out(p.profile());
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    const RealVector& lambda = eig.values[i];
    Vector fd(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      const double l = lambda(k);
      if (l < -1e-10 * std::max(1.0, scale)) {
        throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(l) + " is negative");
      }
      if (l <= kernel) {
        if (t < 0) throw Error(ErrorCode::SingularNegativePower, "negative power of a singular element");
        fd(k) = 0.0;
      } else {
        fd(k) = t == 0.0 ? 1.0 : std::pow(l, t);
      }
    }
    const Matrix& v = eig.vectors.block(i);
    out.block(i) = v * fd.asDiagonal() * v.adjoint();
  }
  return out;
}

BlockMatrix imaginary_power(const BlockMatrix& p, double t) {
  const EigenDecomposition eig = hermitian_eig(p);
  const double kernel = 1e-12 * max_abs_eigen(eig.values);
  BlockMatrix out(p.profile());
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    const RealVector& lambda = eig.values[i];
    Vector fd(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      const double l = lambda(k);
      if (l < -1e-10 * std::max(1.0, kernel * 1e12)) {
        throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(l) + " is negative");
      }
      fd(k) = l <= kernel ? Complex(0.0) : std::exp(Complex(0.0, t * std::log(l)));
    }
    const Matrix& v = eig.vectors.block(i);
    out.block(i) = v * fd.asDiagonal() * v.adjoint();
  }
  return out;
}

BlockMatrix support_projection(const BlockMatrix& p, double relative_cutoff) {
  const EigenDecomposition eig = hermitian_eig(p);
  const double cutoff = relative_cutoff * max_abs_eigen(eig.values);
  BlockMatrix out(p.profile());
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    const RealVector& lambda = eig.values[i];
    const Matrix& v = eig.vectors.block(i);
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      if (lambda(k) > cutoff) out.block(i) += v.col(k) * v.col(k).adjoint();
    }
  }
  return out;
}

std::vector<double> singular_values(const BlockMatrix& x) {
  std::vector<double> sv;
  sv.reserve(x.profile().total_dim());
  for (const auto& b : x.blocks()) {
    RealVector sigma;
    Matrix left;
    Matrix right;
    jacobi_svd(b, sigma, left, right);
    for (Eigen::Index k = 0; k < sigma.size(); ++k) sv.push_back(sigma(k));
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double schatten_norm(const BlockMatrix& x, const Exponent& p) {
  const std::vector<double> sv = singular_values(x);
  if (sv.empty()) return 0.0;
  if (p.is_infinite()) return sv.front();
  const double top = sv.front();
  if (top == 0.0) return 0.0;
  const double pv = p.value();
  if (pv == 1.0) return std::accumulate(sv.begin(), sv.end(), 0.0);
  // scale by the top singular value to keep large p finite
  double s = 0.0;
  for (double v : sv) s += std::pow(v / top, pv);
  return top * std::pow(s, 1.0 / pv);
}

double operator_norm(const BlockMatrix& x) { return schatten_norm(x, Exponent::infinity()); }

Polar polar(const BlockMatrix& x) {
  Polar out{BlockMatrix(x.profile()), BlockMatrix(x.profile())};
  std::vector<RealVector> sigma(x.block_count());
  std::vector<Matrix> left(x.block_count());
  std::vector<Matrix> right(x.block_count());
  double scale = 0.0;
  for (std::size_t i = 0; i < x.block_count(); ++i) {
    jacobi_svd(x.block(i), sigma[i], left[i], right[i]);
    if (sigma[i].size() > 0) scale = std::max(scale, sigma[i].maxCoeff());
  }
  const double cutoff = 1e-12 * scale;
  for (std::size_t i = 0; i < x.block_count(); ++i) {
    for (Eigen::Index k = 0; k < sigma[i].size(); ++k) {
      if (sigma[i](k) <= cutoff) continue;
      out.abs.block(i) += sigma[i](k) * right[i].col(k) * right[i].col(k).adjoint();
      out.u.block(i) += left[i].col(k) * right[i].col(k).adjoint();
    }
  }
  return out;
}

double min_eigenvalue(const BlockMatrix& h) {
  const EigenDecomposition eig = hermitian_eig(h);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : eig.values) {
    if (v.size() > 0) m = std::min(m, v.minCoeff());
  }
  return m;
}

double max_eigenvalue(const BlockMatrix& h) {
  const EigenDecomposition eig = hermitian_eig(h);
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& v : eig.values) {
    if (v.size() > 0) m = std::max(m, v.maxCoeff());
  }
  return m;
}

}  // namespace hlp
