#pragma once

// Random Jordan *-morphisms in tile form for property tests.

#include <algorithm>
#include <random>
#include <vector>

#include "hlp/jordan.hpp"
#include "hlp/random.hpp"

namespace fixtures {

struct TileSpecOptions {
  int max_src_blocks = 2;
  int max_src_dim = 3;
  int max_dst_blocks = 2;
  int max_copies = 2;      ///< tiles per target block
  bool allow_slack = true; ///< J(1) != 1 in the target
  bool allow_kernel = true;
  bool allow_anti = true;
};

/// Random tile spec: every target block receives 1..max_copies tiles of
/// random kind, possibly leaving unused rows, then a random block unitary.
inline hlp::JordanMorphismSpec random_tile_spec(hlp::Rng& rng, const TileSpecOptions& o = {}) {
  std::uniform_int_distribution<int> nsrc(1, o.max_src_blocks);
  std::uniform_int_distribution<int> sdim(1, o.max_src_dim);
  std::uniform_int_distribution<int> ndst(1, o.max_dst_blocks);
  std::uniform_int_distribution<int> ncopy(1, o.max_copies);
  std::bernoulli_distribution coin(0.5);

  std::vector<int> src_dims(static_cast<std::size_t>(nsrc(rng)));
  for (int& d : src_dims) d = sdim(rng);
  const hlp::BlockProfile src(src_dims);

  const int dst_blocks = ndst(rng);
  std::vector<hlp::Tile> tiles;
  std::vector<int> dst_dims;
  std::vector<bool> used(src_dims.size(), false);
  std::uniform_int_distribution<std::size_t> pick(0, src_dims.size() - 1);
  for (int j = 0; j < dst_blocks; ++j) {
    int offset = 0;
    const int copies = ncopy(rng);
    for (int c = 0; c < copies; ++c) {
      std::size_t i = pick(rng);
      if (!o.allow_kernel) {
        // visit unused source blocks first so the map ends up injective
        const auto it = std::find(used.begin(), used.end(), false);
        if (it != used.end()) i = static_cast<std::size_t>(it - used.begin());
      }
      used[i] = true;
      const hlp::TileKind kind = o.allow_anti && coin(rng) ? hlp::TileKind::A : hlp::TileKind::H;
      tiles.push_back({i, static_cast<std::size_t>(j), offset, kind, std::nullopt});
      offset += src_dims[i];
    }
    if (o.allow_slack && coin(rng)) offset += 1;
    dst_dims.push_back(offset);
  }
  if (!o.allow_kernel) {
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (!used[i]) {
        tiles.push_back({i, 0, dst_dims[0], hlp::TileKind::H, std::nullopt});
        dst_dims[0] += src_dims[i];
      }
    }
  }
  const hlp::BlockProfile dst(dst_dims);
  std::vector<std::optional<hlp::Matrix>> unitaries(dst.block_count());
  for (std::size_t j = 0; j < dst.block_count(); ++j) {
    if (coin(rng)) unitaries[j] = hlp::random_unitary(rng, dst.dim(j));
  }
  return hlp::JordanMorphismSpec(src, dst, std::move(tiles), std::move(unitaries));
}

/// Random *-isomorphism (onto) or anti-isomorphism: a block permutation with
/// per-block conjugation, transposed when `anti`.
inline hlp::JordanMorphismSpec random_isomorphism(hlp::Rng& rng, bool anti) {
  std::uniform_int_distribution<int> nblocks(1, 3);
  std::uniform_int_distribution<int> sdim(1, 3);
  std::vector<int> dims(static_cast<std::size_t>(nblocks(rng)));
  for (int& d : dims) d = sdim(rng);
  std::vector<std::size_t> perm(dims.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> dst_dims(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) dst_dims[perm[i]] = dims[i];
  std::vector<hlp::Tile> tiles;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    tiles.push_back({i, perm[i], 0, anti ? hlp::TileKind::A : hlp::TileKind::H, hlp::random_unitary(rng, dims[i])});
  }
  return hlp::JordanMorphismSpec(hlp::BlockProfile(dims), hlp::BlockProfile(dst_dims), std::move(tiles));
}

}  // namespace fixtures
