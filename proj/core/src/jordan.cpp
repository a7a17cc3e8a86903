#include "hlp/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hlp/error.hpp"
#include "hlp/random.hpp"

namespace hlp {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr double kJordanTol = 1e-9;

void require_unitary(const Matrix& u, Eigen::Index n, const std::string& what) {
  if (u.rows() != n || u.cols() != n) throw Error(ErrorCode::InvalidArgument, what + " has the wrong size");
  const double res = (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (res > kUnitaryTol) throw Error(ErrorCode::InvalidArgument, what + " is not unitary (residual " + std::to_string(res) + ")");
}

double residual_scale(const BlockMatrix& a) { return std::max(1.0, a.max_abs() * a.max_abs()); }

}  // namespace

std::string to_string(TileKind kind) { return kind == TileKind::H ? "H" : "A"; }

JordanMorphismSpec::JordanMorphismSpec(BlockProfile src, BlockProfile dst, std::vector<Tile> tiles,
                                       std::vector<std::optional<Matrix>> block_unitaries)
    : src_(std::move(src)), dst_(std::move(dst)), tiles_(std::move(tiles)), block_unitaries_(std::move(block_unitaries)) {
  if (block_unitaries_.empty()) block_unitaries_.resize(dst_.block_count());
  if (block_unitaries_.size() != dst_.block_count()) {
    throw Error(ErrorCode::InvalidArgument, "block_unitaries must have one entry per target block");
  }
  for (std::size_t j = 0; j < block_unitaries_.size(); ++j) {
    if (block_unitaries_[j]) require_unitary(*block_unitaries_[j], dst_.dim(j), "block unitary " + std::to_string(j));
  }
  std::vector<std::vector<std::pair<int, int>>> used(dst_.block_count());
  for (std::size_t t = 0; t < tiles_.size(); ++t) {
    Tile& tile = tiles_[t];
    const std::string where = "tiles[" + std::to_string(t) + "]";
    if (tile.src_block >= src_.block_count()) throw Error(ErrorCode::InvalidArgument, where + ".src out of range");
    if (tile.dst_block >= dst_.block_count()) throw Error(ErrorCode::InvalidArgument, where + ".dst out of range");
    const int n = src_.dim(tile.src_block);
    if (tile.offset < 0 || tile.offset + n > dst_.dim(tile.dst_block)) {
      std::ostringstream os;
      os << where << ".offset: offset " << tile.offset << " + size " << n << " exceeds target block size "
         << dst_.dim(tile.dst_block);
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
    for (const auto& [lo, hi] : used[tile.dst_block]) {
      if (tile.offset < hi && lo < tile.offset + n) {
        throw Error(ErrorCode::InvalidArgument, where + ".offset: overlaps another tile on the same target block");
      }
    }
    used[tile.dst_block].emplace_back(tile.offset, tile.offset + n);
    if (tile.conj_unitary) require_unitary(*tile.conj_unitary, n, where + ".unitary");
    if (n == 1) tile.kind = TileKind::H;
  }
}

JordanMorphismSpec JordanMorphismSpec::identity(const BlockProfile& profile) {
  std::vector<Tile> tiles;
  for (std::size_t b = 0; b < profile.block_count(); ++b) tiles.push_back({b, b, 0, TileKind::H, std::nullopt});
  return JordanMorphismSpec(profile, profile, std::move(tiles));
}

JordanMorphismSpec JordanMorphismSpec::transpose(const BlockProfile& profile) {
  std::vector<Tile> tiles;
  for (std::size_t b = 0; b < profile.block_count(); ++b) tiles.push_back({b, b, 0, TileKind::A, std::nullopt});
  return JordanMorphismSpec(profile, profile, std::move(tiles));
}

BlockMatrix JordanMorphismSpec::apply(const BlockMatrix& a) const {
  require_same_profile(src_, a.profile(), "JordanMorphismSpec::apply");
  BlockMatrix out(dst_);
  for (const Tile& tile : tiles_) {
    const Matrix& block = a.block(tile.src_block);
    Matrix image = tile.kind == TileKind::H ? Matrix(block) : Matrix(block.transpose());
    if (tile.conj_unitary) image = *tile.conj_unitary * image * tile.conj_unitary->adjoint();
    const Eigen::Index n = image.rows();
    out.block(tile.dst_block).block(tile.offset, tile.offset, n, n) += image;
  }
  for (std::size_t j = 0; j < dst_.block_count(); ++j) {
    if (block_unitaries_[j]) {
      out.block(j) = *block_unitaries_[j] * out.block(j) * block_unitaries_[j]->adjoint();
    }
  }
  return out;
}

BlockMatrix JordanMorphismSpec::range_projection(const std::function<bool(const Tile&)>& select) const {
  BlockMatrix out(dst_);
  for (const Tile& tile : tiles_) {
    if (!select(tile)) continue;
    const int n = src_.dim(tile.src_block);
    out.block(tile.dst_block).block(tile.offset, tile.offset, n, n) += Matrix::Identity(n, n);
  }
  for (std::size_t j = 0; j < dst_.block_count(); ++j) {
    if (block_unitaries_[j]) {
      out.block(j) = *block_unitaries_[j] * out.block(j) * block_unitaries_[j]->adjoint();
    }
  }
  return out;
}

BlockMatrix JordanMorphismSpec::unit_image() const {
  return range_projection([](const Tile&) { return true; });
}

BlockMatrix JordanMorphismSpec::homomorphic_projection() const {
  return range_projection([](const Tile& t) { return t.kind == TileKind::H; });
}

JordanReport verify_jordan(const LinearMap& map, const BlockProfile& src, int samples, std::uint64_t seed) {
  Rng rng(seed);
  JordanReport report;

  std::vector<BlockMatrix> probes;
  for (std::size_t b = 0; b < src.block_count(); ++b) {
    for (int i = 0; i < src.dim(b); ++i) {
      for (int k = i; k < src.dim(b); ++k) {
        BlockMatrix e = BlockMatrix::unit(src, b, i, k);
        if (i != k) e += BlockMatrix::unit(src, b, k, i);
        probes.push_back(std::move(e));
      }
    }
  }
  for (int s = 0; s < samples; ++s) probes.push_back(random_hermitian(rng, src));

  double worst = -1.0;
  bool failed = false;
  for (const BlockMatrix& a : probes) {
    const double scale = residual_scale(a);
    const BlockMatrix ja = map(a);
    const double adj = (map(a.adjoint()) - ja.adjoint()).max_abs() / scale;
    const double sq = (map(a * a) - ja * ja).max_abs() / scale;
    report.adjoint_residual = std::max(report.adjoint_residual, adj);
    report.square_residual = std::max(report.square_residual, sq);
    const double res = std::max(adj, sq);
    if (!failed && (res >= kJordanTol || res > worst)) {
      worst = res;
      report.witness = a;
      failed = res >= kJordanTol;
    }
  }

  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int s = 0; s < std::max(samples, 4); ++s) {
    const BlockMatrix a = random_element(rng, src);
    const BlockMatrix b = random_element(rng, src);
    const Complex alpha(coef(rng), coef(rng));
    const Complex beta(coef(rng), coef(rng));
    const BlockMatrix lhs = map(alpha * a + beta * b);
    const BlockMatrix rhs = alpha * map(a) + beta * map(b);
    const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    report.linearity_residual = std::max(report.linearity_residual, (lhs - rhs).max_abs() / scale);
  }

  report.samples = static_cast<int>(probes.size());
  report.max_residual = std::max({report.adjoint_residual, report.square_residual, report.linearity_residual});
  report.pass = report.max_residual < kJordanTol;
  return report;
}

JordanReport verify_jordan(const JordanMorphismSpec& j, int samples, std::uint64_t seed) {
  return verify_jordan([&j](const BlockMatrix& a) { return j.apply(a); }, j.src(), samples, seed);
}

BlockMatrix density_of_functional(const BlockProfile& profile, const std::function<Complex(const BlockMatrix&)>& f) {
  // sum_i tr(k_i a_i) on a = e_{rc} in block b reads k_b(c, r)
  BlockMatrix k(profile);
  for (std::size_t b = 0; b < profile.block_count(); ++b) {
    const int n = profile.dim(b);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) k.block(b)(c, r) = f(BlockMatrix::unit(profile, b, r, c));
    }
  }
  return k;
}

Weight pushforward_density(const JordanMorphismSpec& j, const Weight& w2) {
  require_faithful(w2, "pushforward_density");
  require_same_profile(j.dst(), w2.profile(), "pushforward_density");
  return Weight(density_of_functional(j.src(), [&](const BlockMatrix& a) { return evaluate(w2, j.apply(a)); }));
}

SubalgebraBasis image_algebra(const JordanMorphismSpec& j) {
  std::vector<BlockMatrix> generators;
  for (const auto& e : BlockMatrix::unit_basis(j.src())) generators.push_back(j.apply(e));
  // J = 0 generates the zero algebra; keep the (empty) basis on the target profile
  const bool all_zero = std::all_of(generators.begin(), generators.end(),
                                    [](const BlockMatrix& g) { return g.max_abs() == 0.0; });
  if (all_zero) return SubalgebraBasis(j.dst(), {});
  return generate_algebra(generators);
}

ZDecomposition decompose(const JordanMorphismSpec& j, const Weight& w2) {
  require_faithful(w2, "decompose");
  require_same_profile(j.dst(), w2.profile(), "decompose");

  const BlockMatrix z = j.homomorphic_projection();
  const BlockMatrix unit = j.unit_image();
  const BlockMatrix anti = unit - z;

  std::vector<double> e_diag;
  std::vector<double> ez_diag;
  std::vector<double> e1mz_diag;
  for (std::size_t b = 0; b < j.src().block_count(); ++b) {
    bool any = false;
    bool h = false;
    bool a = false;
    for (const Tile& t : j.tiles()) {
      if (t.src_block != b) continue;
      any = true;
      (t.kind == TileKind::H ? h : a) = true;
    }
    for (int i = 0; i < j.src().dim(b); ++i) {
      e_diag.push_back(any ? 1.0 : 0.0);
      ez_diag.push_back(h ? 1.0 : 0.0);
      e1mz_diag.push_back(a ? 1.0 : 0.0);
    }
  }

  const BlockProfile& p1 = j.src();
  auto density = [&](const BlockMatrix* left) {
    return Weight(density_of_functional(p1, [&](const BlockMatrix& x) {
      const BlockMatrix jx = j.apply(x);
      return evaluate(w2, left ? *left * jx : jx);
    }));
  };

  const SubalgebraBasis algebra = image_algebra(j);
  double centrality = 0.0;
  for (const auto& b : algebra.elements()) centrality = std::max(centrality, (z * b - b * z).max_abs());
  if (centrality > 1e-9) {
    throw Error(ErrorCode::InvalidArgument,
                "tile projection z is not central in the generated algebra (residual " + std::to_string(centrality) + ")");
  }

  return ZDecomposition{Projection(z),
                        Projection(BlockMatrix::diagonal(p1, e_diag)),
                        Projection(BlockMatrix::diagonal(p1, ez_diag)),
                        Projection(BlockMatrix::diagonal(p1, e1mz_diag)),
                        density(nullptr),
                        density(&z),
                        density(&anti),
                        unit,
                        centrality};
}

bool is_modular_invariant(const SubalgebraBasis& basis, const Weight& w2, const std::vector<double>& t_samples) {
  require_faithful(w2, "is_modular_invariant");
  for (double t : t_samples) {
    const BlockMatrix u = imaginary_power(w2.density(), t);
    for (const auto& b : basis.elements()) {
      if (basis.residual(u * b * u.adjoint()) >= 1e-8) return false;
    }
  }
  return true;
}

}  // namespace hlp
