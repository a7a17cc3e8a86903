#include "hlp/vnops.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "hlp/error.hpp"

namespace hlp {

namespace {

constexpr double kRankTol = 1e-9;

double commutator_norm(const BlockMatrix& a, const BlockMatrix& b) { return operator_norm(a * b - b * a); }

}  // namespace

Weight::Weight(BlockMatrix density) {
  const double scale = std::max(1.0, density.max_abs());
  if (hermitian_residual(density) > 1e-10 * scale) {
    throw Error(ErrorCode::NotHermitian, "weight density is not Hermitian");
  }
  density_ = symmetrize(density);
  const EigenDecomposition eig = hermitian_eig(density_);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& v : eig.values) {
    lo = std::min(lo, v.minCoeff());
    hi = std::max(hi, v.maxCoeff());
  }
  if (lo < -1e-10 * scale) {
    throw Error(ErrorCode::NotPSD, "weight density has eigenvalue " + std::to_string(lo));
  }
  faithful_ = hi > 0.0 && lo > 1e-12 * hi;
}

Weight Weight::trace(const BlockProfile& profile, double scale) {
  return Weight(BlockMatrix::identity(profile) * Complex(scale));
}

void require_faithful(const Weight& w, const char* where) {
  if (!w.faithful()) throw Error(ErrorCode::NotFaithful, std::string(where) + ": weight is not faithful");
}

Projection::Projection(BlockMatrix e) : e_(std::move(e)) {
  const double self_adjoint = hermitian_residual(e_);
  const double idempotent = (e_ * e_ - e_).max_abs();
  if (self_adjoint > 1e-8 || idempotent > 1e-8) {
    throw Error(ErrorCode::InvalidArgument, "not a projection (|e-e*| = " + std::to_string(self_adjoint) +
                                                ", |e^2-e| = " + std::to_string(idempotent) + ")");
  }
}

Complex evaluate(const Weight& w, const BlockMatrix& a) {
  require_same_profile(w.profile(), a.profile(), "evaluate");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.block_count(); ++i) {
    s += (w.density().block(i).cwiseProduct(a.block(i).transpose())).sum();
  }
  return s;
}

Projection support_projection(const Weight& w) { return Projection(hlp::support_projection(w.density())); }

bool locally_absolutely_continuous(const Weight& w0, const Weight& w1) {
  require_same_profile(w0.profile(), w1.profile(), "locally_absolutely_continuous");
  const BlockMatrix e = support_projection(w0).matrix();
  const BlockMatrix f = support_projection(w1).matrix();
  return (e * f * e - e).max_abs() < 1e-8;
}

BlockMatrix modular_conjugate(const Weight& w, double t, const BlockMatrix& a) {
  require_faithful(w, "modular_conjugate");
  require_same_profile(w.profile(), a.profile(), "modular_conjugate");
  const BlockMatrix u = imaginary_power(w.density(), t);
  return u * a * u.adjoint();
}

CentralizerReport in_centralizer(const Weight& w, const BlockMatrix& d, const std::vector<double>& t_samples) {
  require_faithful(w, "in_centralizer");
  require_same_profile(w.profile(), d.profile(), "in_centralizer");
  const BlockMatrix& h = w.density();
  const double d_norm = operator_norm(d);
  CentralizerReport report;
  report.commutator_norm = commutator_norm(h, d);
  report.in_centralizer = report.commutator_norm < 1e-9 * (1.0 + d_norm) * operator_norm(h);
  for (double t : t_samples) {
    report.orbit_deviation = std::max(report.orbit_deviation, operator_norm(modular_conjugate(w, t, d) - d));
  }
  report.orbit_fixed = report.orbit_deviation < 1e-8 * (1.0 + d_norm);
  return report;
}

WeightCommutation weight_commutation(const Weight& w, const Weight& v) {
  require_same_profile(w.profile(), v.profile(), "weights_commute");
  const BlockMatrix e = support_projection(w).matrix();
  const BlockMatrix f = support_projection(v).matrix();
  WeightCommutation out;
  out.support_commutator = commutator_norm(e, f);
  const BlockMatrix g = e * f;
  const BlockMatrix a = g * w.density() * g;
  const BlockMatrix b = g * v.density() * g;
  out.density_commutator = commutator_norm(a, b);
  const double scale = std::max(1.0, operator_norm(w.density()) * operator_norm(v.density()));
  out.commute = out.support_commutator < 1e-9 && out.density_commutator < 1e-9 * scale;
  return out;
}

bool weights_commute(const Weight& w, const Weight& v) { return weight_commutation(w, v).commute; }

SubalgebraBasis::SubalgebraBasis(BlockProfile ambient, std::vector<BlockMatrix> elements)
    : ambient_(std::move(ambient)), elements_(std::move(elements)) {
  for (const auto& e : elements_) require_same_profile(ambient_, e.profile(), "SubalgebraBasis");
}

BlockMatrix SubalgebraBasis::project(const BlockMatrix& x) const {
  BlockMatrix p(ambient_);
  for (const auto& b : elements_) p += b * hs_inner(b, x);
  return p;
}

double SubalgebraBasis::residual(const BlockMatrix& x) const { return (x - project(x)).frobenius(); }

double SubalgebraBasis::closure_residual() const {
  double r = 0.0;
  for (const auto& a : elements_) {
    r = std::max(r, residual(a.adjoint()));
    for (const auto& b : elements_) r = std::max(r, residual(a * b));
  }
  return r;
}

BlockMatrix SubalgebraBasis::unit() const {
  BlockMatrix s(ambient_);
  for (const auto& b : elements_) s += b * b.adjoint();
  return hlp::support_projection(s, 1e-9);
}

SubalgebraBasis generate_algebra(const std::vector<BlockMatrix>& generators) {
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "generate_algebra needs at least one generator");
  const BlockProfile ambient = generators.front().profile();
  std::vector<BlockMatrix> basis;
  std::deque<std::size_t> pending;

  // Adds the component of x orthogonal to the current basis (two passes of
  // Gram-Schmidt); returns true if the span grew.
  auto absorb = [&](BlockMatrix x) {
    require_same_profile(ambient, x.profile(), "generate_algebra");
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) x -= b * hs_inner(b, x);
    }
    const double n = x.frobenius();
    if (n <= kRankTol) return false;
    basis.push_back(x * Complex(1.0 / n));
    pending.push_back(basis.size() - 1);
    return true;
  };

  for (const auto& g : generators) {
    const double n = g.frobenius();
    if (n == 0.0) continue;
    absorb(g * Complex(1.0 / n));
    absorb(g.adjoint() * Complex(1.0 / n));
  }

  const std::size_t limit = static_cast<std::size_t>(ambient.carrier_dim());
  std::size_t rounds = 0;
  while (!pending.empty()) {
    if (++rounds > limit * limit + limit) {
      throw Error(ErrorCode::NoConvergence, "subalgebra dimension failed to stabilize");
    }
    const std::size_t k = pending.front();
    pending.pop_front();
    const BlockMatrix a = basis[k];
    absorb(a.adjoint());
    for (std::size_t j = 0; j <= k && j < basis.size(); ++j) {
      const BlockMatrix b = basis[j];
      absorb(a * b);
      absorb(b * a);
    }
    if (basis.size() > limit) throw Error(ErrorCode::NoConvergence, "subalgebra exceeds ambient dimension");
  }
  return SubalgebraBasis(ambient, std::move(basis));
}

}  // namespace hlp
