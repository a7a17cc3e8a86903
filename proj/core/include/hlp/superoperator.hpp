#pragma once

#include <functional>
#include <memory>

#include "hlp/exponent.hpp"
#include "hlp/matcore.hpp"

namespace hlp {

/// Linear map L^p(domain) -> L^q(codomain) given by its action. The matrix
/// form in the Hilbert-Schmidt basis of matrix units (to_vector coordinates)
/// is materialized once on first use and shared between copies.
class SuperOperator {
 public:
  using Action = std::function<BlockMatrix(const BlockMatrix&)>;

  SuperOperator(BlockProfile domain, Exponent p, BlockProfile codomain, Exponent q, Action action);

  /// Operator with the given matrix form (codomain.carrier_dim x domain.carrier_dim).
  static SuperOperator from_matrix(BlockProfile domain, Exponent p, BlockProfile codomain, Exponent q, Matrix m);

  const BlockProfile& domain() const noexcept { return domain_; }
  const BlockProfile& codomain() const noexcept { return codomain_; }
  const Exponent& p() const noexcept { return p_; }
  const Exponent& q() const noexcept { return q_; }

  /// Throws ProfileMismatch.
  BlockMatrix apply(const BlockMatrix& x) const;
  BlockMatrix operator()(const BlockMatrix& x) const { return apply(x); }

  const Matrix& matrix() const;

  /// Hilbert-Schmidt adjoint, L^{q*}(codomain) -> L^{p*}(domain).
  SuperOperator hs_adjoint() const;
  /// Banach dual for the trace pairing <g, x> = tr(g x):
  /// tr(dual(g) x) = tr(g T(x)), L^{q*}(codomain) -> L^{p*}(domain).
  SuperOperator dual() const;

  /// Max over random probes of ||T(a x + b y) - a T(x) - b T(y)|| and of the
  /// matrix-form reproduction error.
  double linearity_residual(int probes, std::uint64_t seed) const;

 private:
  struct Cache;

  BlockProfile domain_;
  Exponent p_;
  BlockProfile codomain_;
  Exponent q_;
  Action action_;
  std::shared_ptr<Cache> cache_;
};

/// second o first. Throws ProfileMismatch when the spaces do not chain.
SuperOperator compose(const SuperOperator& second, const SuperOperator& first);

/// Dense matrix of the transpose map x -> x^T in to_vector coordinates.
Matrix transpose_permutation(const BlockProfile& profile);

}  // namespace hlp
