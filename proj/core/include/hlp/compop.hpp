#pragma once

// Composition operators h1^{1/2p} a h1^{1/2p} -> h2^{1/2q} J(a) h2^{1/2q} and
// the analysis around them: L^p -> L^q norm estimates, bounded change of
// weights, module-map recovery, the characteristic-function classifier, the
// inclusion of a subalgebra, and the splitting inequality.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlp/exponent.hpp"
#include "hlp/jordan.hpp"
#include "hlp/matcore.hpp"
#include "hlp/superoperator.hpp"
#include "hlp/vnops.hpp"

namespace hlp {

// --- norm estimation -------------------------------------------------------

struct NormOptions {
  int restarts = 16;
  int max_iter = 200;
  std::uint64_t seed = 0;
  double gain_tol = 1e-10;
  /// Run the alternating maximizer even at (2,2).
  bool force_iterative = false;
};

struct NormEstimate {
  double lower_bound = 0.0;
  /// Exact value (largest singular value of the matrix form); (2,2) only.
  bool certified = false;
  int iterations = 0;
  std::uint64_t seed = 0;
  int restarts = 0;
};

/// Maximizer of Re tr(g* x) over the unit ball of L^s: u|g|^{s*-1} normalized,
/// the polar isometry for s = inf, the top singular pair for s = 1.
BlockMatrix norm_aligned(const BlockMatrix& g, const Exponent& s);

/// Lower bound on ||C||_{L^p -> L^q} by alternating maximization of
/// Re tr(y* C(x)) over ||x||_p = 1, ||y||_{q*} = 1, best over restarts. The
/// objective is nondecreasing along each run. At p = q = 2 the exact norm is
/// returned and certified (unless force_iterative). Restarts run concurrently
/// with per-restart seeds split from options.seed; the result does not depend
/// on scheduling.
NormEstimate operator_norm(const SuperOperator& c, const NormOptions& options = {});

/// Objective trace of a single alternating run (for monotonicity checks).
std::vector<double> alternating_trace(const SuperOperator& c, const BlockMatrix& start, int max_iter);

// --- composition operators ---------------------------------------------------

/// C_J(x) = h2^{1/2q} J(h1^{-1/2p} x h1^{-1/2p}) h2^{1/2q}.
/// Throws NotFaithful, ExponentOrder (q > p), ProfileMismatch.
SuperOperator build_composition(const JordanMorphismSpec& j, const Weight& w1, const Weight& w2, const Exponent& p,
                                const Exponent& q);

// --- change of weights -------------------------------------------------------

struct ChangeOfWeights {
  ExponentTriple triple;
  BlockMatrix d;  ///< k^{1/2q} h^{-1/2p}
  double bound;   ///< || |d|^2 ||_r = ||d||_{2r}^2
  SuperOperator t;
  NormEstimate measured;
  bool within_bound = false;  ///< measured.lower_bound <= bound + 1e-6
};

/// Bounded change of weights from h (faithful) to k (arbitrary support):
/// h^{1/2p} a h^{1/2p} -> k^{1/2q} e a e k^{1/2q} with e = supp(k).
/// Throws NotFaithful, ExponentOrder.
ChangeOfWeights change_of_weights(const Weight& w, const Weight& w0, const Exponent& p, const Exponent& q,
                                  const NormOptions& options = {});

/// The bound || |d|^2 ||_r alone, without measuring the operator.
double change_of_weights_bound(const Weight& w, const Weight& w0, const Exponent& p, const Exponent& q);

struct ScaleEntry {
  Exponent p;
  Exponent q;
  double bound = 0.0;
  double measured = 0.0;
  bool pass = false;
};

/// change_of_weights for every pair with p/q equal to `ratio` (p = q = inf
/// counts as ratio 1). Throws RatioMismatch.
std::vector<ScaleEntry> change_of_weights_scale(const Weight& w, const Weight& w0, const Rational& ratio,
                                                const std::vector<std::pair<Exponent, Exponent>>& pairs,
                                                const NormOptions& options = {});

// --- module maps -------------------------------------------------------------

struct MultiplierRecovery {
  BlockMatrix c;
  double residual = 0.0;
  bool recovered = false;
  /// Basis element h^{1/p} e_{rc} with the largest module residual.
  BlockMatrix witness;
};

/// c = T(h^{1/p}) h^{-1/p} and the largest residual ||T(h^{1/p} a) - c h^{1/p} a||
/// over matrix units a, relative to max(1, ||c|| ||h^{1/p}||). Recovered iff
/// below 1e-8. Does not throw on failure.
MultiplierRecovery analyze_left_multiplier(const SuperOperator& t, const Weight& w);
/// As above but throws NotModuleMap (with the witness residual) on failure.
BlockMatrix recover_left_multiplier(const SuperOperator& t, const Weight& w);

/// Mirror image for right-module maps S(x a) ... = x c: c = h^{-1/p} S(h^{1/p}).
MultiplierRecovery analyze_right_multiplier(const SuperOperator& s, const Weight& w);

// --- characteristic-function classifier ---------------------------------------

enum class Verdict { Accept, Reject };

std::string to_string(Verdict verdict);

struct Classification {
  Verdict verdict = Verdict::Reject;
  std::optional<JordanMorphismSpec> morphism;
  /// Largest deviation of J0(e) from a projection over the probe family.
  double projection_residual = 0.0;
  /// Probe projection attaining it (REJECT witness).
  BlockMatrix witness;
  JordanReport jordan;
  /// max over matrix units of |J(e) - J0(e)| for the reconstructed tiles.
  double reconstruction_residual = 0.0;
  std::string reason;
};

/// Decides whether S is the composition operator of a Jordan *-morphism by
/// pulling it back to J0(a) = unembed_q(w2, S(embed_p(w1, a))), testing that
/// J0 maps projections to projections (tolerance 1e-7) and is Jordan, then
/// rebuilding the tile form. Throws NotFaithful.
Classification classify_characteristic_preserving(const SuperOperator& s, const Weight& w1, const Weight& w2,
                                                  const Exponent& p, const Exponent& q, std::uint64_t seed = 0);

/// Tile form of a Jordan *-morphism given as a linear map (no checks beyond
/// the reconstruction itself).
JordanMorphismSpec reconstruct_tiles(const LinearMap& map, const BlockProfile& src, const BlockProfile& dst);

// --- subalgebra inclusion ------------------------------------------------------

struct Inclusion {
  SuperOperator op;
  double domination_constant = 0.0;  ///< smallest C with phi2 o i <= C phi_B
  NormEstimate measured;
  bool within_bound = false;  ///< measured <= C^{1/p} + 1e-6
};

/// The map hB^{1/2p} a hB^{1/2p} -> h2^{1/2p} i(a) h2^{1/2p} for an injective
/// *-homomorphism i (H tiles only). Throws DominationFails, NotFaithful.
Inclusion contraction_inclusion(const JordanMorphismSpec& inclusion, const Weight& w_sub, const Weight& w2,
                                const Exponent& p, const NormOptions& options = {});

// --- splitting inequality ------------------------------------------------------

struct SplittingReport {
  double min_gap_eigenvalue = 0.0;  ///< lambda_min(hz^{1/q} + h1z^{1/q} - hJ^{1/q})
  bool holds = false;               ///< min gap >= -1e-9
};

/// Throws NotCommuting (hz, h1z), NotSummable (hJ != hz + h1z).
SplittingReport splitting_inequality_check(const Weight& h_j, const Weight& h_z, const Weight& h_1mz,
                                           const Exponent& q);

}  // namespace hlp
