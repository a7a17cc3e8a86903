// Cyclic Jacobi kernels for Hermitian eigenproblems and one-sided SVD.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "hlp/error.hpp"
#include "hlp/matcore.hpp"

namespace hlp {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagonalThreshold = 1e-13;

struct Rotation {
  double c;
  double s;
  Complex phase;  // e^{-i phi}
};

// Unitary J = diag(1, e^{-i phi}) * [[c, -s], [s, c]] diagonalizing the 2x2
// Hermitian [[a, b], [conj(b), d]].
Rotation make_rotation(double a, double d, Complex b) {
  const double mag = std::abs(b);
  const Complex phase = mag > 0.0 ? std::conj(b) / mag : Complex(1.0);
  const double theta = 0.5 * std::atan2(2.0 * mag, a - d);
  return {std::cos(theta), std::sin(theta), phase};
}

// columns p, q <- [col_p, col_q] * J
void rotate_columns(Matrix& m, Eigen::Index p, Eigen::Index q, const Rotation& r) {
  const Vector cp = m.col(p);
  const Vector cq = m.col(q) * r.phase;
  m.col(p) = r.c * cp + r.s * cq;
  m.col(q) = -r.s * cp + r.c * cq;
}

// rows p, q <- J* [row_p; row_q]
void rotate_rows(Matrix& m, Eigen::Index p, Eigen::Index q, const Rotation& r) {
  const Eigen::RowVectorXcd rp = m.row(p);
  const Eigen::RowVectorXcd rq = m.row(q) * std::conj(r.phase);
  m.row(p) = r.c * rp + r.s * rq;
  m.row(q) = -r.s * rp + r.c * rq;
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

}  // namespace

void jacobi_eigen(const Matrix& h, RealVector& values, Matrix& vectors) {
  const Eigen::Index n = h.rows();
  Matrix a = h.selfadjointView<Eigen::Upper>();
  vectors = Matrix::Identity(n, n);
  const double threshold = kOffDiagonalThreshold * a.norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (++sweep > kMaxSweeps) throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded 60 sweeps");
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Complex(0.0)) continue;
        const Rotation r = make_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(vectors, p, q, r);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
  values.resize(n);
  Matrix sorted(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    values(k) = a(order[k], order[k]).real();
    sorted.col(k) = vectors.col(order[k]);
  }
  vectors = std::move(sorted);
}

void jacobi_svd(const Matrix& x, RealVector& sigma, Matrix& left, Matrix& right) {
  const Eigen::Index n = x.cols();
  Matrix a = x;
  right = Matrix::Identity(n, n);
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  const double orth_tol = std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<Eigen::Index>(n, 1));

  for (int sweep = 0;; ++sweep) {
    if (sweep > kMaxSweeps) throw Error(ErrorCode::NoConvergence, "Jacobi SVD exceeded 60 sweeps");
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const Complex gamma = a.col(p).dot(a.col(q));
        if (std::abs(gamma) <= orth_tol * std::sqrt(alpha * beta) || std::abs(gamma) < tiny) continue;
        rotated = true;
        const Rotation r = make_rotation(alpha, beta, gamma);
        rotate_columns(a, p, q, r);
        rotate_columns(right, p, q, r);
      }
    }
    if (!rotated) break;
  }

  sigma.resize(n);
  left = Matrix::Zero(x.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sigma(k) = a.col(k).norm();
    if (sigma(k) > 0.0) left.col(k) = a.col(k) / sigma(k);
  }
}

}  // namespace hlp
