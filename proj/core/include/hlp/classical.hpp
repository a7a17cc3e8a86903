#pragma once

// Commutative layer: finite measure spaces, point maps Y -> X1 defined on part
// of X2, the composition operator f -> f o T (extended by zero off Y) between
// weighted sequence spaces, its L^r boundedness criterion, and the five-step
// factorization through the support of the pushforward measure.
//
// Functions are carried in the same coordinates as the diagonal Haagerup
// embedding: f in L^p(X, m) is the diagonal element with entries m(a)^{1/p} f(a)
// on the profile [1, ..., 1], so Schatten norms are the weighted l^p norms.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hlp/compop.hpp"
#include "hlp/exponent.hpp"
#include "hlp/jordan.hpp"
#include "hlp/matcore.hpp"
#include "hlp/superoperator.hpp"

namespace hlp {

class FiniteMeasureSpace {
 public:
  /// Throws InvalidArgument on empty input, non-positive or non-finite masses,
  /// or a label count that does not match.
  explicit FiniteMeasureSpace(std::vector<double> masses, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return masses_.size(); }
  double mass(std::size_t atom) const { return masses_.at(atom); }
  const std::vector<double>& masses() const noexcept { return masses_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double total() const;
  /// The diagonal profile [1, ..., 1].
  BlockProfile profile() const;

 private:
  std::vector<double> masses_;
  std::vector<std::string> labels_;
};

/// T : Y -> X1 with Y a subset of X2: targets[y] is T(y), or empty for y not in Y.
class PointMap {
 public:
  PointMap(std::size_t target_size, std::vector<std::optional<std::size_t>> targets);

  static PointMap identity(std::size_t n);

  std::size_t source_size() const noexcept { return targets_.size(); }  ///< |X2|
  std::size_t target_size() const noexcept { return target_size_; }    ///< |X1|
  const std::optional<std::size_t>& operator[](std::size_t y) const { return targets_.at(y); }
  const std::vector<std::optional<std::size_t>>& targets() const noexcept { return targets_; }
  /// Atoms of X2 in the domain Y, ascending.
  std::vector<std::size_t> domain() const;

 private:
  std::size_t target_size_;
  std::vector<std::optional<std::size_t>> targets_;
};

/// Blocks of X2 atoms (each block ascending, blocks ordered by their label).
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;
};

/// (m2 o T^{-1})(a) for every atom a of X1. Throws InvalidArgument on size mismatch.
std::vector<double> pushforward(const PointMap& t, const FiniteMeasureSpace& m2);

/// f_J(a) = (m2 o T^{-1})(a) / m1(a).
std::vector<double> rn_derivative(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2);

struct Criterion {
  Exponent r;
  std::vector<double> f;  ///< f_J
  double norm_f = 0.0;    ///< ||f_J||_{L^r(m1)}
  double bound = 0.0;     ///< norm_f^{1/q}
};

/// r = p/(p - q) (r = inf when p = q), ||f_J||_r and the bound on ||C_T||.
/// Throws ExponentOrder if q > p.
Criterion criterion(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                    const Exponent& p, const Exponent& q);

/// The composition operator f -> f o T on Y, 0 off Y, in embedded coordinates.
SuperOperator classical_operator(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                                 const Exponent& p, const Exponent& q);

struct ClassicalOperator {
  SuperOperator op;
  Criterion criterion;
  /// sup ||C f||_q over ||f||_p = 1 by the Lagrange optimum on each support set.
  double exact_norm = 0.0;
  /// Alternating maximizer on the diagonal operator (cross-check).
  NormEstimate measured;
  /// max(exact_norm, measured) <= bound + 1e-9
  bool within_bound = false;
};

/// Throws ExponentOrder.
ClassicalOperator build_classical(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                                  const Exponent& p, const Exponent& q, const NormOptions& options = {});

struct Pipeline {
  /// restrict to Z, change of weights m1|Z -> m2 o T^{-1}, f -> f o T onto the
  /// Sigma_T-measurable functions, refinement Sigma_T -> Y, extension by zero.
  std::vector<SuperOperator> steps;
  std::vector<std::string> names;
  std::vector<std::size_t> z;  ///< support of the pushforward, ascending
  std::vector<std::size_t> y;  ///< domain of T, ascending
  Partition sigma_t;           ///< T^{-1}(a) for a in Z
  /// max over a function basis of |composite - direct|
  double composite_residual = 0.0;
  /// max | ||III x||_q - ||x||_q | over basis and random probes
  double isometry_residual = 0.0;

  SuperOperator composite() const;
};

/// Throws ExponentOrder; EmptySupport when the pushforward vanishes (no Z).
Pipeline five_step_pipeline(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                            const Exponent& p, const Exponent& q);

/// delta* = min phi1(E) over subsets E with phi0(E) >= eps (+inf if none).
/// Throws TooLarge beyond 20 atoms, InvalidArgument on length mismatch.
double eps_delta_modulus(const std::vector<double>& phi0, const std::vector<double>& phi1, double eps);

struct DiagonalConsistency {
  double residual = 0.0;
  bool agree = false;  ///< residual < 1e-9
};

/// Diagonal algebras with densities diag(m1), diag(m2) and T as an H-tile
/// Jordan morphism; compares build_composition with the classical operator.
DiagonalConsistency diagonal_consistency(const PointMap& t, const FiniteMeasureSpace& m1,
                                         const FiniteMeasureSpace& m2, const Exponent& p, const Exponent& q);

/// The H-tile spec of f -> f o T between the diagonal algebras.
JordanMorphismSpec diagonal_morphism(const PointMap& t);

}  // namespace hlp
