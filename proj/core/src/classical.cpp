#include "hlp/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hlp/error.hpp"
#include "hlp/random.hpp"

namespace hlp {

namespace {

constexpr std::size_t kMaxModulusAtoms = 20;
constexpr std::size_t kMaxSupportSearch = 16;

void require_order(const Exponent& p, const Exponent& q) {
  if (p < q) throw Error(ErrorCode::ExponentOrder, "q = " + q.to_string() + " exceeds p = " + p.to_string());
}

void require_sizes(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2) {
  if (t.target_size() != m1.size() || t.source_size() != m2.size()) {
    throw Error(ErrorCode::InvalidArgument, "point map sizes do not match the measure spaces");
  }
}

BlockProfile ones(std::size_t n) { return BlockProfile(std::vector<int>(n, 1)); }

// Diagonal operator with out[j] = sum_i weight(j, i) x[i], given as a sparse list.
struct Link {
  std::size_t to;
  std::size_t from;
  double weight;
};

SuperOperator diagonal_operator(std::size_t n_from, const Exponent& p, std::size_t n_to, const Exponent& q,
                                std::vector<Link> links) {
  const BlockProfile dom = ones(n_from);
  const BlockProfile cod = ones(n_to);
  return SuperOperator(dom, p, cod, q, [cod, links = std::move(links)](const BlockMatrix& x) {
    BlockMatrix y(cod);
    for (const Link& l : links) y.block(l.to)(0, 0) += l.weight * x.block(l.from)(0, 0);
    return y;
  });
}

double power_of(double m, const Exponent& e) { return std::pow(m, e.inverse()); }

}  // namespace

FiniteMeasureSpace::FiniteMeasureSpace(std::vector<double> masses, std::vector<std::string> labels)
    : masses_(std::move(masses)), labels_(std::move(labels)) {
  if (masses_.empty()) throw Error(ErrorCode::InvalidArgument, "measure space has no atoms");
  for (std::size_t a = 0; a < masses_.size(); ++a) {
    if (!(masses_[a] > 0.0) || !std::isfinite(masses_[a])) {
      throw Error(ErrorCode::InvalidArgument, "atom " + std::to_string(a) + " has non-positive or infinite mass");
    }
  }
  if (labels_.empty()) {
    for (std::size_t a = 0; a < masses_.size(); ++a) labels_.push_back(std::to_string(a + 1));
  }
  if (labels_.size() != masses_.size()) throw Error(ErrorCode::InvalidArgument, "label count differs from atom count");
}

double FiniteMeasureSpace::total() const {
  double s = 0.0;
  for (double m : masses_) s += m;
  return s;
}

BlockProfile FiniteMeasureSpace::profile() const { return ones(masses_.size()); }

PointMap::PointMap(std::size_t target_size, std::vector<std::optional<std::size_t>> targets)
    : target_size_(target_size), targets_(std::move(targets)) {
  for (std::size_t y = 0; y < targets_.size(); ++y) {
    if (targets_[y] && *targets_[y] >= target_size_) {
      throw Error(ErrorCode::InvalidArgument, "map[" + std::to_string(y) + "] points outside the target space");
    }
  }
}

PointMap PointMap::identity(std::size_t n) {
  std::vector<std::optional<std::size_t>> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return PointMap(n, std::move(t));
}

std::vector<std::size_t> PointMap::domain() const {
  std::vector<std::size_t> y;
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    if (targets_[i]) y.push_back(i);
  }
  return y;
}

std::vector<double> pushforward(const PointMap& t, const FiniteMeasureSpace& m2) {
  if (t.source_size() != m2.size()) throw Error(ErrorCode::InvalidArgument, "point map does not match the measure");
  std::vector<double> nu(t.target_size(), 0.0);
  for (std::size_t y = 0; y < t.source_size(); ++y) {
    if (t[y]) nu[*t[y]] += m2.mass(y);
  }
  return nu;
}

std::vector<double> rn_derivative(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2) {
  require_sizes(t, m1, m2);
  std::vector<double> f = pushforward(t, m2);
  for (std::size_t a = 0; a < f.size(); ++a) f[a] /= m1.mass(a);
  return f;
}

Criterion criterion(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                    const Exponent& p, const Exponent& q) {
  require_order(p, q);
  Criterion c{classical_ratio_exponent(p, q), rn_derivative(t, m1, m2), 0.0, 0.0};
  if (c.r.is_infinite()) {
    c.norm_f = *std::max_element(c.f.begin(), c.f.end());
  } else {
    const double r = c.r.value();
    double s = 0.0;
    for (std::size_t a = 0; a < c.f.size(); ++a) s += m1.mass(a) * std::pow(c.f[a], r);
    c.norm_f = std::pow(s, 1.0 / r);
  }
  c.bound = c.norm_f > 0.0 ? std::pow(c.norm_f, q.inverse()) : 0.0;
  return c;
}

SuperOperator classical_operator(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                                 const Exponent& p, const Exponent& q) {
  require_sizes(t, m1, m2);
  std::vector<Link> links;
  for (std::size_t y = 0; y < t.source_size(); ++y) {
    if (!t[y]) continue;
    const std::size_t a = *t[y];
    links.push_back({y, a, power_of(m2.mass(y), q) / power_of(m1.mass(a), p)});
  }
  return diagonal_operator(m1.size(), p, m2.size(), q, std::move(links));
}

ClassicalOperator build_classical(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                                  const Exponent& p, const Exponent& q, const NormOptions& options) {
  Criterion crit = criterion(t, m1, m2, p, q);
  SuperOperator op = classical_operator(t, m1, m2, p, q);

  std::vector<std::size_t> z;
  for (std::size_t a = 0; a < crit.f.size(); ++a) {
    if (crit.f[a] > 0.0) z.push_back(a);
  }

  // Lagrange optimum on each support set S: |f|^q proportional to f_J^{r-1}
  // (r finite), the indicator of the heaviest atom (r = inf).
  auto value_on = [&](const std::vector<std::size_t>& s) {
    BlockMatrix x(m1.profile());
    if (crit.r.is_infinite()) {
      std::size_t best = s.front();
      for (std::size_t a : s) {
        if (crit.f[a] > crit.f[best]) best = a;
      }
      x.block(best)(0, 0) = power_of(m1.mass(best), p);
    } else {
      const double expo = (crit.r.value() - 1.0) * q.inverse();
      for (std::size_t a : s) x.block(a)(0, 0) = power_of(m1.mass(a), p) * std::pow(crit.f[a], expo);
    }
    const double nx = schatten_norm(x, p);
    return nx > 0.0 ? schatten_norm(op.apply(x), q) / nx : 0.0;
  };

  double exact = 0.0;
  if (!z.empty()) {
    if (z.size() <= kMaxSupportSearch) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << z.size()); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < z.size(); ++i) {
          if ((mask >> i) & 1U) s.push_back(z[i]);
        }
        exact = std::max(exact, value_on(s));
      }
    } else {
      exact = value_on(z);
    }
  }

  const NormEstimate measured = operator_norm(op, options);
  const bool within = std::max(exact, measured.lower_bound) <= crit.bound + 1e-9;
  return ClassicalOperator{std::move(op), std::move(crit), exact, measured, within};
}

SuperOperator Pipeline::composite() const {
  SuperOperator out = steps.front();
  for (std::size_t k = 1; k < steps.size(); ++k) out = compose(steps[k], out);
  return out;
}

Pipeline five_step_pipeline(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2,
                            const Exponent& p, const Exponent& q) {
  require_order(p, q);
  require_sizes(t, m1, m2);
  const std::vector<double> nu = pushforward(t, m2);

  Pipeline pl;
  std::map<std::size_t, std::size_t> z_index;
  for (std::size_t a = 0; a < nu.size(); ++a) {
    if (nu[a] > 0.0) {
      z_index[a] = pl.z.size();
      pl.z.push_back(a);
    }
  }
  if (pl.z.empty()) {
    throw Error(ErrorCode::EmptySupport, "the pushforward measure vanishes: no support to factor through");
  }
  pl.y = t.domain();
  pl.sigma_t.blocks.resize(pl.z.size());
  for (std::size_t y : pl.y) pl.sigma_t.blocks[z_index.at(*t[y])].push_back(y);

  const std::size_t nz = pl.z.size();
  const std::size_t ny = pl.y.size();

  // (I) restriction to Z
  std::vector<Link> restrict;
  for (std::size_t i = 0; i < nz; ++i) restrict.push_back({i, pl.z[i], 1.0});
  pl.steps.push_back(diagonal_operator(m1.size(), p, nz, p, std::move(restrict)));
  pl.names.emplace_back("restrict to the support Z");

  // (II) change of weights m1|Z -> nu: f -> f, coordinates scaled by nu^{1/q} m1^{-1/p}
  std::vector<Link> change;
  for (std::size_t i = 0; i < nz; ++i) {
    change.push_back({i, i, power_of(nu[pl.z[i]], q) / power_of(m1.mass(pl.z[i]), p)});
  }
  pl.steps.push_back(diagonal_operator(nz, p, nz, q, std::move(change)));
  pl.names.emplace_back("change of weights m1|Z -> m2 o T^-1");

  // (III) f -> f o T onto Sigma_T-measurable functions; block T^{-1}(a) has mass nu(a)
  std::vector<Link> iso;
  for (std::size_t i = 0; i < nz; ++i) iso.push_back({i, i, 1.0});
  pl.steps.push_back(diagonal_operator(nz, q, nz, q, std::move(iso)));
  pl.names.emplace_back("isometry onto Sigma_T-measurable functions");

  // (IV) refinement Sigma_T -> Y
  std::map<std::size_t, std::size_t> y_index;
  for (std::size_t k = 0; k < ny; ++k) y_index[pl.y[k]] = k;
  std::vector<Link> refine;
  for (std::size_t i = 0; i < nz; ++i) {
    for (std::size_t y : pl.sigma_t.blocks[i]) {
      refine.push_back({y_index.at(y), i, power_of(m2.mass(y), q) / power_of(nu[pl.z[i]], q)});
    }
  }
  pl.steps.push_back(diagonal_operator(nz, q, ny, q, std::move(refine)));
  pl.names.emplace_back("refinement Sigma_T -> Sigma_2 on Y");

  // (V) extension by zero
  std::vector<Link> extend;
  for (std::size_t k = 0; k < ny; ++k) extend.push_back({pl.y[k], k, 1.0});
  pl.steps.push_back(diagonal_operator(ny, q, m2.size(), q, std::move(extend)));
  pl.names.emplace_back("extension by zero");

  const SuperOperator direct = classical_operator(t, m1, m2, p, q);
  const SuperOperator comp = pl.composite();
  for (const BlockMatrix& e : BlockMatrix::unit_basis(m1.profile())) {
    pl.composite_residual = std::max(pl.composite_residual, (comp.apply(e) - direct.apply(e)).max_abs());
  }

  const SuperOperator& step3 = pl.steps[2];
  std::vector<BlockMatrix> probes = BlockMatrix::unit_basis(step3.domain());
  Rng rng(split_seed(0x5eed, nz));
  for (int k = 0; k < 8; ++k) {
    BlockMatrix x(step3.domain());
    for (std::size_t i = 0; i < nz; ++i) x.block(i)(0, 0) = random_gaussian(rng, 1, 1)(0, 0).real();
    probes.push_back(std::move(x));
  }
  for (const BlockMatrix& x : probes) {
    pl.isometry_residual =
        std::max(pl.isometry_residual, std::abs(schatten_norm(step3.apply(x), q) - schatten_norm(x, q)));
  }
  return pl;
}

double eps_delta_modulus(const std::vector<double>& phi0, const std::vector<double>& phi1, double eps) {
  if (phi0.size() != phi1.size()) throw Error(ErrorCode::InvalidArgument, "phi0 and phi1 have different lengths");
  if (phi0.size() > kMaxModulusAtoms) {
    throw Error(ErrorCode::TooLarge, std::to_string(phi0.size()) + " atoms exceed the enumeration limit of 20");
  }
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t count = std::uint64_t{1} << phi0.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < phi0.size(); ++i) {
      if ((mask >> i) & 1U) {
        s0 += phi0[i];
        s1 += phi1[i];
      }
    }
    if (s0 >= eps) best = std::min(best, s1);
  }
  return best;
}

JordanMorphismSpec diagonal_morphism(const PointMap& t) {
  std::vector<Tile> tiles;
  for (std::size_t y = 0; y < t.source_size(); ++y) {
    if (t[y]) tiles.push_back({*t[y], y, 0, TileKind::H, std::nullopt});
  }
  return JordanMorphismSpec(ones(t.target_size()), ones(t.source_size()), std::move(tiles));
}

DiagonalConsistency diagonal_consistency(const PointMap& t, const FiniteMeasureSpace& m1,
                                         const FiniteMeasureSpace& m2, const Exponent& p, const Exponent& q) {
  require_sizes(t, m1, m2);
  const Weight w1(BlockMatrix::diagonal(m1.profile(), m1.masses()));
  const Weight w2(BlockMatrix::diagonal(m2.profile(), m2.masses()));
  const SuperOperator nc = build_composition(diagonal_morphism(t), w1, w2, p, q);
  const SuperOperator cl = classical_operator(t, m1, m2, p, q);
  DiagonalConsistency out;
  for (const BlockMatrix& e : BlockMatrix::unit_basis(m1.profile())) {
    out.residual = std::max(out.residual, (nc.apply(e) - cl.apply(e)).max_abs());
  }
  out.agree = out.residual < 1e-9;
  return out;
}

}  // namespace hlp
