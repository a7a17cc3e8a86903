#include <algorithm>
#include <cmath>
#include <sstream>

#include "hlp/compop.hpp"
#include "hlp/error.hpp"
#include "hlp/haagerup.hpp"
#include "hlp/random.hpp"

namespace hlp {

namespace {

constexpr double kProjectionTol = 1e-7;
constexpr double kReconstructionTol = 1e-8;
constexpr int kRandomProbes = 200;
constexpr int kMaxPatternDim = 12;

// Orthonormal basis of the range of an (approximate) projection.
Matrix range_basis(const Matrix& p) {
  RealVector values;
  Matrix vectors;
  jacobi_eigen(0.5 * (p + p.adjoint()), values, vectors);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) > 0.5) cols.push_back(k);
  }
  Matrix out(p.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = vectors.col(cols[i]);
  return out;
}

// Nearest unitary U V* of a square matrix with SVD U S V*.
Matrix nearest_unitary(const Matrix& w) {
  RealVector sigma;
  Matrix left;
  Matrix right;
  jacobi_svd(w, sigma, left, right);
  return left * right.adjoint();
}

std::vector<BlockMatrix> probe_projections(const BlockProfile& profile, std::uint64_t seed) {
  std::vector<BlockMatrix> probes;
  Rng rng(seed);
  for (int s = 0; s < kRandomProbes; ++s) {
    const BlockMatrix a = random_hermitian(rng, profile);
    probes.push_back(spectral_apply(a, [](double v) { return Complex(v > 0.0 ? 1.0 : 0.0, 0.0); }));
  }
  const int n = profile.total_dim();
  std::vector<double> diag(static_cast<std::size_t>(n));
  if (n <= kMaxPatternDim) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = (mask >> i) & 1U ? 1.0 : 0.0;
      probes.push_back(BlockMatrix::diagonal(profile, diag));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      std::fill(diag.begin(), diag.end(), 0.0);
      diag[static_cast<std::size_t>(i)] = 1.0;
      probes.push_back(BlockMatrix::diagonal(profile, diag));
      std::fill(diag.begin(), diag.begin() + i + 1, 1.0);
      probes.push_back(BlockMatrix::diagonal(profile, diag));
    }
  }
  return probes;
}

}  // namespace

std::string to_string(Verdict verdict) { return verdict == Verdict::Accept ? "ACCEPT" : "REJECT"; }

JordanMorphismSpec reconstruct_tiles(const LinearMap& map, const BlockProfile& src, const BlockProfile& dst) {
  std::vector<Tile> tiles;
  std::vector<std::vector<Matrix>> columns(dst.block_count());
  std::vector<int> next_offset(dst.block_count(), 0);

  for (std::size_t i = 0; i < src.block_count(); ++i) {
    const int n = src.dim(i);
    const BlockMatrix e11 = map(BlockMatrix::unit(src, i, 0, 0));
    BlockMatrix h_part = e11;
    if (n > 1) {
      const BlockMatrix x = map(BlockMatrix::unit(src, i, 0, 1)) * map(BlockMatrix::unit(src, i, 1, 0));
      h_part = e11 * x * e11;
    }
    const BlockMatrix a_part = e11 - h_part;

    for (std::size_t j = 0; j < dst.block_count(); ++j) {
      const Matrix vs = range_basis(h_part.block(j));
      for (Eigen::Index c = 0; c < vs.cols(); ++c) {
        Matrix copy(dst.dim(j), n);
        for (int k = 0; k < n; ++k) copy.col(k) = map(BlockMatrix::unit(src, i, k, 0)).block(j) * vs.col(c);
        tiles.push_back({i, j, next_offset[j], TileKind::H, std::nullopt});
        next_offset[j] += n;
        columns[j].push_back(std::move(copy));
      }
      if (n == 1) continue;
      const Matrix us = range_basis(a_part.block(j));
      for (Eigen::Index c = 0; c < us.cols(); ++c) {
        Matrix copy(dst.dim(j), n);
        for (int k = 0; k < n; ++k) copy.col(k) = map(BlockMatrix::unit(src, i, 0, k)).block(j) * us.col(c);
        tiles.push_back({i, j, next_offset[j], TileKind::A, std::nullopt});
        next_offset[j] += n;
        columns[j].push_back(std::move(copy));
      }
    }
  }

  std::vector<std::optional<Matrix>> unitaries(dst.block_count());
  for (std::size_t j = 0; j < dst.block_count(); ++j) {
    const int m = dst.dim(j);
    if (next_offset[j] > m) {
      throw Error(ErrorCode::InvalidArgument, "map is not a Jordan *-morphism: tile copies exceed target block " +
                                                  std::to_string(j));
    }
    if (next_offset[j] == 0) continue;
    Matrix w(m, m);
    int col = 0;
    for (const Matrix& copy : columns[j]) {
      w.middleCols(col, copy.cols()) = copy;
      col += static_cast<int>(copy.cols());
    }
    if (col < m) {
      RealVector values;
      Matrix vectors;
      const Matrix used = w.leftCols(col);
      jacobi_eigen(Matrix::Identity(m, m) - used * used.adjoint(), values, vectors);
      w.rightCols(m - col) = vectors.rightCols(m - col);
    }
    const Matrix u = nearest_unitary(w);
    if ((u - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-12) unitaries[j] = u;
  }
  return JordanMorphismSpec(src, dst, std::move(tiles), std::move(unitaries));
}

Classification classify_characteristic_preserving(const SuperOperator& s, const Weight& w1, const Weight& w2,
                                                  const Exponent& p, const Exponent& q, std::uint64_t seed) {
  require_faithful(w1, "classify (w1)");
  require_faithful(w2, "classify (w2)");
  require_same_profile(s.domain(), w1.profile(), "classify (domain)");
  require_same_profile(s.codomain(), w2.profile(), "classify (codomain)");

  const BlockProfile& src = w1.profile();
  const BlockProfile& dst = w2.profile();
  const BlockMatrix left = frac_power(w1.density(), 0.5 * p.inverse());
  const BlockMatrix right = frac_power(w2.density(), -0.5 * q.inverse());
  const Matrix& m = s.matrix();
  // pulled-back map J0, materialized
  Matrix j0(dst.carrier_dim(), src.carrier_dim());
  {
    const std::vector<BlockMatrix> basis = BlockMatrix::unit_basis(src);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const BlockMatrix x = left * basis[k] * left;
      const BlockMatrix y = right * BlockMatrix::from_vector(dst, m * x.to_vector()) * right;
      j0.col(static_cast<Eigen::Index>(k)) = y.to_vector();
    }
  }
  const LinearMap pull = [&j0, &dst](const BlockMatrix& a) { return BlockMatrix::from_vector(dst, j0 * a.to_vector()); };

  Classification out;
  out.witness = BlockMatrix(src);
  for (const BlockMatrix& e : probe_projections(src, seed)) {
    const BlockMatrix f = pull(e);
    const double res = std::max((f * f - f).max_abs(), (f.adjoint() - f).max_abs());
    if (res > out.projection_residual || out.witness.max_abs() == 0.0) {
      out.projection_residual = std::max(out.projection_residual, res);
      out.witness = e;
    }
  }
  if (out.projection_residual > kProjectionTol) {
    std::ostringstream os;
    os << "image of a projection is not a projection (residual " << out.projection_residual << ")";
    out.reason = os.str();
    return out;
  }

  out.jordan = verify_jordan(pull, src, 20, split_seed(seed, 1));
  if (!out.jordan.pass) {
    out.witness = out.jordan.witness;
    std::ostringstream os;
    os << "pulled-back map is not a Jordan *-morphism (residual " << out.jordan.max_residual << ")";
    out.reason = os.str();
    return out;
  }

  try {
    JordanMorphismSpec spec = reconstruct_tiles(pull, src, dst);
    for (const BlockMatrix& a : BlockMatrix::unit_basis(src)) {
      out.reconstruction_residual = std::max(out.reconstruction_residual, (spec.apply(a) - pull(a)).max_abs());
    }
    if (out.reconstruction_residual >= kReconstructionTol) {
      std::ostringstream os;
      os << "tile reconstruction does not reproduce the map (residual " << out.reconstruction_residual << ")";
      out.reason = os.str();
      return out;
    }
    out.morphism = std::move(spec);
  } catch (const Error& err) {
    out.reason = err.what();
    return out;
  }
  out.verdict = Verdict::Accept;
  out.reason = "characteristic functions preserved; composition operator of the recovered Jordan *-morphism";
  return out;
}

}  // namespace hlp
