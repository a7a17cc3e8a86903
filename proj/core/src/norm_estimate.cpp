#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "hlp/compop.hpp"
#include "hlp/random.hpp"

namespace hlp {

namespace {

struct BlockSvd {
  RealVector sigma;
  Matrix left;
  Matrix right;
};

std::vector<BlockSvd> block_svds(const BlockMatrix& g, double& sigma_max) {
  std::vector<BlockSvd> out(g.block_count());
  sigma_max = 0.0;
  for (std::size_t b = 0; b < g.block_count(); ++b) {
    jacobi_svd(g.block(b), out[b].sigma, out[b].left, out[b].right);
    if (out[b].sigma.size() > 0) sigma_max = std::max(sigma_max, out[b].sigma.maxCoeff());
  }
  return out;
}

// Orthonormal basis of the complement of the (orthonormal) columns of `kept`.
Matrix complement_basis(const Matrix& kept, Eigen::Index n) {
  const Eigen::Index missing = n - kept.cols();
  if (missing <= 0) return Matrix(n, 0);
  Matrix q = Matrix::Identity(n, n);
  if (kept.cols() > 0) q -= kept * kept.adjoint();
  RealVector values;
  Matrix vectors;
  jacobi_eigen(q, values, vectors);
  // eigenvalues ascending: the complement sits at the top
  return vectors.rightCols(missing);
}

struct RunResult {
  double value = 0.0;
  int iterations = 0;
};

Vector normalized_start(const BlockMatrix& x, const Exponent& p) {
  const double n = schatten_norm(x, p);
  return n > 0.0 ? Vector(x.to_vector() / n) : x.to_vector();
}

// One alternating run from x (unit L^p norm). Returns ||C x_k||_q per step.
std::vector<double> run(const Matrix& m, const BlockProfile& dom, const BlockProfile& cod, const Exponent& p,
                        const Exponent& q, Vector x, int max_iter, double gain_tol) {
  const Exponent q_star = q.conjugate();
  std::vector<double> trace;
  BlockMatrix gx = BlockMatrix::from_vector(cod, m * x);
  trace.push_back(schatten_norm(gx, q));
  for (int it = 0; it < max_iter; ++it) {
    const BlockMatrix y = norm_aligned(gx, q_star);
    const BlockMatrix h = BlockMatrix::from_vector(dom, m.adjoint() * y.to_vector());
    const BlockMatrix next = norm_aligned(h, p);
    if (next.max_abs() == 0.0) break;
    x = next.to_vector();
    gx = BlockMatrix::from_vector(cod, m * x);
    const double value = schatten_norm(gx, q);
    const double prev = trace.back();
    trace.push_back(value);
    if (value - prev < gain_tol * std::max(1.0, prev)) break;
  }
  return trace;
}

}  // namespace

BlockMatrix norm_aligned(const BlockMatrix& g, const Exponent& s) {
  double sigma_max = 0.0;
  const std::vector<BlockSvd> svd = block_svds(g, sigma_max);
  BlockMatrix x(g.profile());
  if (sigma_max == 0.0) return x;
  const double cutoff = 1e-12 * sigma_max;

  if (s.inverse() == 1.0) {
    // p = 1: the top singular pair
    for (std::size_t b = 0; b < svd.size(); ++b) {
      for (Eigen::Index k = 0; k < svd[b].sigma.size(); ++k) {
        if (svd[b].sigma(k) == sigma_max) {
          x.block(b) = svd[b].left.col(k) * svd[b].right.col(k).adjoint();
          return x;
        }
      }
    }
    return x;
  }

  if (s.is_infinite()) {
    // polar isometry completed to a unitary on the complement of the support
    for (std::size_t b = 0; b < svd.size(); ++b) {
      const BlockSvd& d = svd[b];
      const Eigen::Index n = d.sigma.size();
      std::vector<Eigen::Index> kept;
      std::vector<Eigen::Index> dropped;
      for (Eigen::Index k = 0; k < n; ++k) (d.sigma(k) > cutoff ? kept : dropped).push_back(k);
      Matrix uk(n, static_cast<Eigen::Index>(kept.size()));
      Matrix vk(n, static_cast<Eigen::Index>(kept.size()));
      for (std::size_t i = 0; i < kept.size(); ++i) {
        uk.col(static_cast<Eigen::Index>(i)) = d.left.col(kept[i]);
        vk.col(static_cast<Eigen::Index>(i)) = d.right.col(kept[i]);
      }
      Matrix block = uk * vk.adjoint();
      if (!dropped.empty()) {
        const Matrix w = complement_basis(uk, n);
        Matrix vc(n, static_cast<Eigen::Index>(dropped.size()));
        for (std::size_t i = 0; i < dropped.size(); ++i) vc.col(static_cast<Eigen::Index>(i)) = d.right.col(dropped[i]);
        block += w * vc.adjoint();
      }
      x.block(b) = block;
    }
    return x;
  }

  const double inv = s.inverse();
  const double power = inv / (1.0 - inv);  // s* - 1
  double mass = 0.0;
  for (std::size_t b = 0; b < svd.size(); ++b) {
    const BlockSvd& d = svd[b];
    RealVector f(d.sigma.size());
    for (Eigen::Index k = 0; k < f.size(); ++k) {
      f(k) = d.sigma(k) > cutoff ? std::pow(d.sigma(k) / sigma_max, power) : 0.0;
      mass += std::pow(f(k), 1.0 / inv);
    }
    x.block(b) = d.left * f.cast<Complex>().asDiagonal() * d.right.adjoint();
  }
  x *= Complex(1.0 / std::pow(mass, inv), 0.0);
  return x;
}

std::vector<double> alternating_trace(const SuperOperator& c, const BlockMatrix& start, int max_iter) {
  require_same_profile(c.domain(), start.profile(), "alternating_trace");
  return run(c.matrix(), c.domain(), c.codomain(), c.p(), c.q(), normalized_start(start, c.p()), max_iter, 0.0);
}

NormEstimate operator_norm(const SuperOperator& c, const NormOptions& options) {
  NormEstimate est;
  est.seed = options.seed;
  est.restarts = options.restarts;
  const Matrix& m = c.matrix();

  const bool hilbert = c.p().inverse() == 0.5 && c.q().inverse() == 0.5;
  if (hilbert && !options.force_iterative) {
    RealVector values;
    Matrix vectors;
    jacobi_eigen(m.adjoint() * m, values, vectors);
    est.lower_bound = values.size() > 0 ? std::sqrt(std::max(0.0, values.maxCoeff())) : 0.0;
    est.certified = true;
    est.restarts = 0;
    return est;
  }

  const int restarts = std::max(1, options.restarts);
  std::vector<std::future<RunResult>> jobs;
  jobs.reserve(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    jobs.push_back(std::async(std::launch::async, [&, r] {
      Rng rng(split_seed(options.seed, static_cast<std::uint64_t>(r)));
      const Vector x0 = normalized_start(random_element(rng, c.domain()), c.p());
      const std::vector<double> t =
          run(m, c.domain(), c.codomain(), c.p(), c.q(), x0, options.max_iter, options.gain_tol);
      return RunResult{*std::max_element(t.begin(), t.end()), static_cast<int>(t.size()) - 1};
    }));
  }
  for (auto& job : jobs) {
    const RunResult res = job.get();
    est.lower_bound = std::max(est.lower_bound, res.value);
    est.iterations += res.iterations;
  }
  return est;
}

}  // namespace hlp
