#pragma once

// Finite-dimensional von Neumann algebra operations: weights as densities,
// projections and supports, the modular group, centralizers, commuting
// weights, and generated *-subalgebras.

#include <vector>

#include "hlp/matcore.hpp"

namespace hlp {

/// Trace-form weight a -> sum_i tr(rho_i a_i) with a positive semidefinite
/// density rho. The density plays the role of the weight's derivative h.
class Weight {
 public:
  /// Validates rho = rho* and rho >= 0 within 1e-10 (relative to ||rho||);
  /// the stored density is symmetrized. Throws NotHermitian / NotPSD.
  explicit Weight(BlockMatrix density);

  /// scale * trace.
  static Weight trace(const BlockProfile& profile, double scale = 1.0);

  const BlockMatrix& density() const noexcept { return density_; }
  const BlockProfile& profile() const noexcept { return density_.profile(); }
  /// Every block positive definite (min eigenvalue > 1e-12 * max eigenvalue).
  bool faithful() const noexcept { return faithful_; }
  /// Total mass tr(rho).
  double mass() const { return density_.trace().real(); }

 private:
  BlockMatrix density_;
  bool faithful_ = false;
};

/// Throws NotFaithful unless the weight is faithful.
void require_faithful(const Weight& w, const char* where);

/// Self-adjoint idempotent, validated to 1e-8.
class Projection {
 public:
  explicit Projection(BlockMatrix e);
  const BlockMatrix& matrix() const noexcept { return e_; }
  const BlockProfile& profile() const noexcept { return e_.profile(); }
  double rank() const { return e_.trace().real(); }

 private:
  BlockMatrix e_;
};

/// phi(a) = sum_i tr(rho_i a_i). Throws ProfileMismatch.
Complex evaluate(const Weight& w, const BlockMatrix& a);

/// Spectral projection of rho onto eigenvalues > 1e-12 * ||rho||_inf.
Projection support_projection(const Weight& w);

/// In finite dimensions w0 <<_loc w1 reduces to supp(w0) <= supp(w1).
bool locally_absolutely_continuous(const Weight& w0, const Weight& w1);

/// sigma_t(a) = h^{it} a h^{-it}. Throws NotFaithful.
BlockMatrix modular_conjugate(const Weight& w, double t, const BlockMatrix& a);

/// Both characterizations of centralizer membership: the commutator [h, d]
/// and the deviation of d along its modular orbit.
struct CentralizerReport {
  bool in_centralizer = false;  ///< commutator verdict
  bool orbit_fixed = false;     ///< modular-orbit verdict
  double commutator_norm = 0.0;
  double orbit_deviation = 0.0;
  bool agree() const noexcept { return in_centralizer == orbit_fixed; }
};

/// Throws NotFaithful.
CentralizerReport in_centralizer(const Weight& w, const BlockMatrix& d, const std::vector<double>& t_samples);

struct WeightCommutation {
  bool commute = false;
  double support_commutator = 0.0;
  double density_commutator = 0.0;
};

/// Supports commute and the densities compressed to the product support commute.
WeightCommutation weight_commutation(const Weight& w, const Weight& v);
bool weights_commute(const Weight& w, const Weight& v);

/// Hilbert-Schmidt orthonormal basis of a *-subalgebra.
class SubalgebraBasis {
 public:
  SubalgebraBasis(BlockProfile ambient, std::vector<BlockMatrix> elements);

  const BlockProfile& ambient() const noexcept { return ambient_; }
  const std::vector<BlockMatrix>& elements() const noexcept { return elements_; }
  std::size_t dimension() const noexcept { return elements_.size(); }

  /// Orthogonal projection onto the span.
  BlockMatrix project(const BlockMatrix& x) const;
  /// ||x - project(x)||_HS
  double residual(const BlockMatrix& x) const;
  /// Largest residual of products and adjoints of basis elements.
  double closure_residual() const;
  /// Unit of the subalgebra (range projection of its elements).
  BlockMatrix unit() const;

 private:
  BlockProfile ambient_;
  std::vector<BlockMatrix> elements_;
};

/// Smallest *-algebra containing the generators (Gram-Schmidt closure with
/// re-orthogonalization, rank tolerance 1e-9). Throws InvalidArgument on an
/// empty list, NoConvergence if the dimension fails to stabilize.
SubalgebraBasis generate_algebra(const std::vector<BlockMatrix>& generators);

}  // namespace hlp
