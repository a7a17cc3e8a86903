#include "hlp/haagerup.hpp"

#include "hlp/error.hpp"

namespace hlp {

BlockMatrix sandwich(const BlockMatrix& h, double s, const BlockMatrix& a) {
  require_same_profile(h.profile(), a.profile(), "sandwich");
  const BlockMatrix hs = frac_power(h, s);
  return hs * a * hs;
}

LpElement embed(const Weight& w, const BlockMatrix& a, const Exponent& p) {
  require_faithful(w, "embed");
  require_same_profile(w.profile(), a.profile(), "embed");
  if (p.is_infinite()) return {a, p};
  return {sandwich(w.density(), 0.5 * p.inverse(), a), p};
}

BlockMatrix unembed(const Weight& w, const LpElement& x) {
  require_faithful(w, "unembed");
  require_same_profile(w.profile(), x.x.profile(), "unembed");
  if (x.p.is_infinite()) return x.x;
  return sandwich(w.density(), -0.5 * x.p.inverse(), x.x);
}

LpElement kosaki_embed(const Weight& w, const LpElement& x) {
  require_faithful(w, "kosaki_embed");
  require_same_profile(w.profile(), x.x.profile(), "kosaki_embed");
  if (x.p == Exponent()) throw Error(ErrorCode::BadExponent, "kosaki_embed needs p > 1");
  const Exponent conj = x.p.conjugate();
  return {sandwich(w.density(), 0.5 * conj.inverse(), x.x), Exponent()};
}

Complex tr(const LpElement& x) { return x.x.trace(); }

HolderSides holder_check(const LpElement& x, const LpElement& y, const ExponentTriple& triple) {
  if (!(x.p == triple.p) || !(y.p == triple.r)) {
    throw Error(ErrorCode::ExponentMismatch, "holder_check expects x in L^" + triple.p.to_string() + " and y in L^" +
                                                 triple.r.to_string() + ", got L^" + x.p.to_string() + " and L^" +
                                                 y.p.to_string());
  }
  HolderSides sides;
  sides.lhs = schatten_norm(x.x * y.x, triple.q);
  sides.rhs = x.norm() * y.norm();
  return sides;
}

}  // namespace hlp
