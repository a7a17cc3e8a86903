#pragma once

// Normal Jordan *-morphisms between block algebras, stored in canonical tile
// form: every such map is a direct sum of copies of a -> a and a -> a^T placed
// on the diagonal of the target blocks, followed by a unitary change of basis.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hlp/matcore.hpp"
#include "hlp/vnops.hpp"

namespace hlp {

enum class TileKind { H, A };

std::string to_string(TileKind kind);

/// One copy of source block `src_block` placed at rows/cols
/// [offset, offset + n) of target block `dst_block`. Kind H places U a U*,
/// kind A places U a^T U* (U = conj_unitary, identity when absent).
struct Tile {
  std::size_t src_block = 0;
  std::size_t dst_block = 0;
  int offset = 0;
  TileKind kind = TileKind::H;
  std::optional<Matrix> conj_unitary;
};

class JordanMorphismSpec {
 public:
  /// Validates tile ranges (in bounds, pairwise disjoint per target block) and
  /// unitaries. A-tiles on 1x1 source blocks are stored as H (they coincide).
  JordanMorphismSpec(BlockProfile src, BlockProfile dst, std::vector<Tile> tiles,
                     std::vector<std::optional<Matrix>> block_unitaries = {});

  static JordanMorphismSpec identity(const BlockProfile& profile);
  static JordanMorphismSpec transpose(const BlockProfile& profile);

  const BlockProfile& src() const noexcept { return src_; }
  const BlockProfile& dst() const noexcept { return dst_; }
  const std::vector<Tile>& tiles() const noexcept { return tiles_; }
  const std::vector<std::optional<Matrix>>& block_unitaries() const noexcept { return block_unitaries_; }

  /// J(a). Throws ProfileMismatch.
  BlockMatrix apply(const BlockMatrix& a) const;
  BlockMatrix operator()(const BlockMatrix& a) const { return apply(a); }

  /// Image of the unit.
  BlockMatrix unit_image() const;
  /// Projection onto the H-tile ranges: the central z with zJ multiplicative.
  BlockMatrix homomorphic_projection() const;

 private:
  BlockMatrix range_projection(const std::function<bool(const Tile&)>& select) const;

  BlockProfile src_;
  BlockProfile dst_;
  std::vector<Tile> tiles_;
  std::vector<std::optional<Matrix>> block_unitaries_;
};

inline BlockMatrix apply(const JordanMorphismSpec& j, const BlockMatrix& a) { return j.apply(a); }

using LinearMap = std::function<BlockMatrix(const BlockMatrix&)>;

struct JordanReport {
  bool pass = false;
  int samples = 0;
  double adjoint_residual = 0.0;
  double square_residual = 0.0;
  double linearity_residual = 0.0;
  double max_residual = 0.0;
  /// First failing probe (matrix-unit probes come first); the worst probe on PASS.
  BlockMatrix witness;
};

/// Checks J(a*) = J(a)*, J(a^2) = J(a)^2 and linearity on `samples` random
/// self-adjoint inputs plus the symmetric matrix-unit probes e_ij + e_ji.
/// PASS iff every residual is below 1e-9 relative to ||a||^2.
JordanReport verify_jordan(const LinearMap& map, const BlockProfile& src, int samples, std::uint64_t seed);
JordanReport verify_jordan(const JordanMorphismSpec& j, int samples, std::uint64_t seed);

/// Unique density k with sum tr(k a) = functional(a), read off matrix units.
BlockMatrix density_of_functional(const BlockProfile& profile, const std::function<Complex(const BlockMatrix&)>& f);

struct ZDecomposition {
  Projection z;         ///< central in the algebra generated by J(M1); H-tile ranges
  Projection e;         ///< support of phi2 o J (central in M1)
  Projection e_z;       ///< source blocks reached by an H tile
  Projection e_1mz;     ///< source blocks reached by an A tile
  Weight phi_j;         ///< phi2 o J
  Weight phi_z;         ///< phi2 o zJ
  Weight phi_1mz;       ///< phi2 o (J(1) - z)J
  BlockMatrix j_unit;   ///< J(1)
  double centrality_residual = 0.0;
};

/// Throws NotFaithful.
ZDecomposition decompose(const JordanMorphismSpec& j, const Weight& w2);

/// k with evaluate(k, a) = evaluate(w2, J(a)). Throws NotFaithful.
Weight pushforward_density(const JordanMorphismSpec& j, const Weight& w2);

/// sigma_t(b) stays in span(B) for every basis element and sampled t
/// (HS residual < 1e-8).
bool is_modular_invariant(const SubalgebraBasis& basis, const Weight& w2, const std::vector<double>& t_samples);

/// The algebra generated by J(M1).
SubalgebraBasis image_algebra(const JordanMorphismSpec& j);

}  // namespace hlp
