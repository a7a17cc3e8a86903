#include "hlp/compop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hlp/error.hpp"
#include "hlp/haagerup.hpp"

namespace hlp {

namespace {

void require_order(const Exponent& p, const Exponent& q) {
  if (p < q) {
    throw Error(ErrorCode::ExponentOrder, "q = " + q.to_string() + " exceeds p = " + p.to_string());
  }
}

// p/q as an exact ratio when possible; p = q = inf is ratio 1.
bool ratio_matches(const Exponent& p, const Exponent& q, const Rational& ratio) {
  if (p.is_infinite() && q.is_infinite()) return ratio == Rational(1);
  if (p.is_infinite() || q.is_infinite()) return false;
  const auto ip = p.exact_inverse();
  const auto iq = q.exact_inverse();
  if (ip && iq) return *iq / *ip == ratio;
  return std::abs(q.inverse() / p.inverse() - ratio.value()) < 1e-12;
}

double multiplier_scale(const BlockMatrix& c, const BlockMatrix& hp) {
  return std::max(1.0, operator_norm(c) * operator_norm(hp));
}

}  // namespace

SuperOperator build_composition(const JordanMorphismSpec& j, const Weight& w1, const Weight& w2, const Exponent& p,
                                const Exponent& q) {
  require_faithful(w1, "build_composition (w1)");
  require_faithful(w2, "build_composition (w2)");
  require_order(p, q);
  require_same_profile(j.src(), w1.profile(), "build_composition (source)");
  require_same_profile(j.dst(), w2.profile(), "build_composition (target)");
  const BlockMatrix left = frac_power(w1.density(), -0.5 * p.inverse());
  const BlockMatrix right = frac_power(w2.density(), 0.5 * q.inverse());
  return SuperOperator(j.src(), p, j.dst(), q,
                       [j, left, right](const BlockMatrix& x) { return right * j.apply(left * x * left) * right; });
}

namespace {

BlockMatrix connecting_element(const Weight& w, const Weight& w0, const Exponent& p, const Exponent& q) {
  require_faithful(w, "change_of_weights");
  require_same_profile(w.profile(), w0.profile(), "change_of_weights");
  return frac_power(w0.density(), 0.5 * q.inverse()) * frac_power(w.density(), -0.5 * p.inverse());
}

}  // namespace

double change_of_weights_bound(const Weight& w, const Weight& w0, const Exponent& p, const Exponent& q) {
  const ExponentTriple triple = ExponentTriple::from_pq(p, q);
  const BlockMatrix d = connecting_element(w, w0, p, q);
  return schatten_norm(d.adjoint() * d, triple.r);
}

ChangeOfWeights change_of_weights(const Weight& w, const Weight& w0, const Exponent& p, const Exponent& q,
                                  const NormOptions& options) {
  const ExponentTriple triple = ExponentTriple::from_pq(p, q);
  const BlockMatrix d = connecting_element(w, w0, p, q);
  const double bound = schatten_norm(d.adjoint() * d, triple.r);
  const BlockMatrix d_star = d.adjoint();
  SuperOperator t(w.profile(), p, w.profile(), q, [d, d_star](const BlockMatrix& x) { return d * x * d_star; });
  const NormEstimate measured = operator_norm(t, options);
  const bool within = measured.lower_bound <= bound + 1e-6;
  return ChangeOfWeights{triple, d, bound, std::move(t), measured, within};
}

std::vector<ScaleEntry> change_of_weights_scale(const Weight& w, const Weight& w0, const Rational& ratio,
                                                const std::vector<std::pair<Exponent, Exponent>>& pairs,
                                                const NormOptions& options) {
  for (const auto& [p, q] : pairs) {
    if (!ratio_matches(p, q, ratio)) {
      std::ostringstream os;
      os << "pair (" << p.to_string() << ", " << q.to_string() << ") does not have p/q = " << ratio.num();
      if (ratio.den() != 1) os << '/' << ratio.den();
      throw Error(ErrorCode::RatioMismatch, os.str());
    }
  }
  std::vector<ScaleEntry> out;
  for (const auto& [p, q] : pairs) {
    const ChangeOfWeights cw = change_of_weights(w, w0, p, q, options);
    out.push_back({p, q, cw.bound, cw.measured.lower_bound, cw.within_bound && std::isfinite(cw.bound)});
  }
  return out;
}

MultiplierRecovery analyze_left_multiplier(const SuperOperator& t, const Weight& w) {
  require_faithful(w, "recover_left_multiplier");
  require_same_profile(t.domain(), w.profile(), "recover_left_multiplier (domain)");
  require_same_profile(t.codomain(), w.profile(), "recover_left_multiplier (codomain)");
  const double s = t.p().inverse();
  const BlockMatrix hp = frac_power(w.density(), s);
  const BlockMatrix c = t.apply(hp) * frac_power(w.density(), -s);
  MultiplierRecovery out{c, 0.0, false, BlockMatrix(w.profile())};
  const double scale = multiplier_scale(c, hp);
  for (const BlockMatrix& a : BlockMatrix::unit_basis(w.profile())) {
    const BlockMatrix x = hp * a;
    const double res = (t.apply(x) - c * x).max_abs() / scale;
    if (res > out.residual || out.witness.max_abs() == 0.0) {
      out.residual = std::max(out.residual, res);
      out.witness = x;
    }
  }
  out.recovered = out.residual < 1e-8;
  return out;
}

BlockMatrix recover_left_multiplier(const SuperOperator& t, const Weight& w) {
  MultiplierRecovery r = analyze_left_multiplier(t, w);
  if (!r.recovered) {
    std::ostringstream os;
    os << "map is not a right-module map: residual " << r.residual << " on witness " << r.witness;
    throw Error(ErrorCode::NotModuleMap, os.str());
  }
  return r.c;
}

MultiplierRecovery analyze_right_multiplier(const SuperOperator& s, const Weight& w) {
  require_faithful(w, "recover_right_multiplier");
  require_same_profile(s.domain(), w.profile(), "recover_right_multiplier (domain)");
  require_same_profile(s.codomain(), w.profile(), "recover_right_multiplier (codomain)");
  const double e = s.p().inverse();
  const BlockMatrix hp = frac_power(w.density(), e);
  const BlockMatrix c = frac_power(w.density(), -e) * s.apply(hp);
  MultiplierRecovery out{c, 0.0, false, BlockMatrix(w.profile())};
  const double scale = multiplier_scale(c, hp);
  for (const BlockMatrix& a : BlockMatrix::unit_basis(w.profile())) {
    const BlockMatrix x = a * hp;
    const double res = (s.apply(x) - x * c).max_abs() / scale;
    if (res > out.residual || out.witness.max_abs() == 0.0) {
      out.residual = std::max(out.residual, res);
      out.witness = x;
    }
  }
  out.recovered = out.residual < 1e-8;
  return out;
}

Inclusion contraction_inclusion(const JordanMorphismSpec& inclusion, const Weight& w_sub, const Weight& w2,
                                const Exponent& p, const NormOptions& options) {
  require_same_profile(inclusion.src(), w_sub.profile(), "contraction_inclusion (subalgebra)");
  require_same_profile(inclusion.dst(), w2.profile(), "contraction_inclusion (target)");
  std::vector<bool> covered(inclusion.src().block_count(), false);
  for (const Tile& t : inclusion.tiles()) {
    if (t.kind != TileKind::H) {
      throw Error(ErrorCode::InvalidArgument, "inclusion must be a *-homomorphism (H tiles only)");
    }
    covered[t.src_block] = true;
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw Error(ErrorCode::InvalidArgument, "inclusion is not injective: a source block has no tile");
  }

  const BlockMatrix k = density_of_functional(
      inclusion.src(), [&](const BlockMatrix& a) { return evaluate(w2, inclusion.apply(a)); });
  const BlockMatrix rho = w_sub.density();
  const BlockMatrix e = support_projection(rho);
  const BlockMatrix outside = BlockMatrix::identity(rho.profile()) - e;
  const double leak = (outside * k * outside).max_abs();
  if (leak > 1e-10 * std::max(1.0, k.max_abs())) {
    std::ostringstream os;
    os << "phi2 o i charges the kernel of phi_B (mass " << leak << "); no finite domination constant";
    throw Error(ErrorCode::DominationFails, os.str());
  }
  require_faithful(w_sub, "contraction_inclusion (subalgebra weight)");
  require_faithful(w2, "contraction_inclusion (target weight)");

  const BlockMatrix r = frac_power(rho, -0.5);
  const double constant = max_eigenvalue(symmetrize(r * k * r));

  const BlockMatrix left = frac_power(rho, -0.5 * p.inverse());
  const BlockMatrix right = frac_power(w2.density(), 0.5 * p.inverse());
  SuperOperator op(inclusion.src(), p, inclusion.dst(), p, [inclusion, left, right](const BlockMatrix& x) {
    return right * inclusion.apply(left * x * left) * right;
  });
  const NormEstimate measured = operator_norm(op, options);
  const double bound = std::pow(constant, p.inverse());
  return Inclusion{std::move(op), constant, measured, measured.lower_bound <= bound + 1e-6};
}

SplittingReport splitting_inequality_check(const Weight& h_j, const Weight& h_z, const Weight& h_1mz,
                                           const Exponent& q) {
  require_same_profile(h_z.profile(), h_1mz.profile(), "splitting_inequality_check");
  require_same_profile(h_j.profile(), h_z.profile(), "splitting_inequality_check");
  const WeightCommutation wc = weight_commutation(h_z, h_1mz);
  if (!wc.commute) {
    std::ostringstream os;
    os << "h_z and h_(1-z) do not commute (support commutator " << wc.support_commutator << ", density commutator "
       << wc.density_commutator << ")";
    throw Error(ErrorCode::NotCommuting, os.str());
  }
  const double mismatch = (h_j.density() - h_z.density() - h_1mz.density()).max_abs();
  if (mismatch > 1e-9 * std::max(1.0, h_j.density().max_abs())) {
    std::ostringstream os;
    os << "h_J differs from h_z + h_(1-z) by " << mismatch;
    throw Error(ErrorCode::NotSummable, os.str());
  }
  const double s = q.inverse();
  const BlockMatrix gap = frac_power(h_z.density(), s) + frac_power(h_1mz.density(), s) - frac_power(h_j.density(), s);
  SplittingReport report;
  report.min_gap_eigenvalue = min_eigenvalue(symmetrize(gap));
  report.holds = report.min_gap_eigenvalue >= -1e-9;
  return report;
}

}  // namespace hlp
