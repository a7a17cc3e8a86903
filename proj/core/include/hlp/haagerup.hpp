#pragma once

// Finite-dimensional Haagerup L^p structure. L^p elements are plain matrices
// measured in Schatten norms; the weight only enters through the symmetric
// embeddings a -> h^{1/2p} a h^{1/2p}.

#include "hlp/exponent.hpp"
#include "hlp/matcore.hpp"
#include "hlp/vnops.hpp"

namespace hlp {

struct LpElement {
  BlockMatrix x;
  Exponent p;

  double norm() const { return schatten_norm(x, p); }
  LpElement adjoint() const { return {x.adjoint(), p}; }
};

/// h^{s} a h^{s} with the support convention for singular h (s >= 0).
BlockMatrix sandwich(const BlockMatrix& h, double s, const BlockMatrix& a);

/// Symmetric positivity-preserving embedding h^{1/2p} a h^{1/2p}; p = inf
/// returns a. Throws NotFaithful.
LpElement embed(const Weight& w, const BlockMatrix& a, const Exponent& p);

/// h^{-1/2p} x h^{-1/2p}. Throws NotFaithful.
BlockMatrix unembed(const Weight& w, const LpElement& x);

/// Kosaki embedding L^p -> L^1, x -> h^{1/2p*} x h^{1/2p*}. Throws NotFaithful,
/// BadExponent when p = 1.
LpElement kosaki_embed(const Weight& w, const LpElement& x);

/// The trace functional on L^1 (plain matrix trace).
Complex tr(const LpElement& x);

struct HolderSides {
  double lhs = 0.0;  ///< ||xy||_q
  double rhs = 0.0;  ///< ||x||_p ||y||_r
};

/// Both sides of Holder's inequality for x in L^p, y in L^r and the triple's
/// q. Throws ExponentMismatch when the element exponents do not match.
HolderSides holder_check(const LpElement& x, const LpElement& y, const ExponentTriple& triple);

}  // namespace hlp
