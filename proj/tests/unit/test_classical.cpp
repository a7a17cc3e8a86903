#include <cmath>
#include <limits>

#include "doctest.h"
#include "hlp/classical.hpp"
#include "hlp/error.hpp"
#include "hlp/random.hpp"

using namespace hlp;

namespace {

const Exponent kOne = Exponent::rational(1);
const Exponent kTwo = Exponent::rational(2);

struct Running {
  FiniteMeasureSpace m1{{0.5, 0.5}};
  FiniteMeasureSpace m2{{1.0 / 3, 1.0 / 3, 1.0 / 3}};
  PointMap t{2, {0, 0, 1}};
};

// Direct evaluation of ||f o T||_{L^q(m2)} / ||f||_{L^p(m1)} for a function f.
double ratio(const PointMap& t, const FiniteMeasureSpace& m1, const FiniteMeasureSpace& m2, double p, double q,
             const std::vector<double>& f) {
  double num = 0.0;
  for (std::size_t y = 0; y < m2.size(); ++y) {
    if (t[y]) num += m2.mass(y) * std::pow(std::abs(f[*t[y]]), q);
  }
  double den = 0.0;
  for (std::size_t a = 0; a < m1.size(); ++a) den += m1.mass(a) * std::pow(std::abs(f[a]), p);
  return std::pow(num, 1.0 / q) / std::pow(den, 1.0 / p);
}

}  // namespace

TEST_CASE("measure spaces reject null atoms") {
  CHECK_THROWS_AS(FiniteMeasureSpace({1.0, 0.0}), Error);
  CHECK_THROWS_AS(FiniteMeasureSpace({}), Error);
  CHECK_THROWS_AS(PointMap(2, {0, 2}), Error);
}

TEST_CASE("pushforward and derivative") {
  const Running r;
  const auto nu = pushforward(r.t, r.m2);
  CHECK(nu[0] == doctest::Approx(2.0 / 3));
  CHECK(nu[1] == doctest::Approx(1.0 / 3));
  const auto f = rn_derivative(r.t, r.m1, r.m2);
  CHECK(f[0] == doctest::Approx(4.0 / 3));
  CHECK(f[1] == doctest::Approx(2.0 / 3));

  const FiniteMeasureSpace m{{0.2, 0.3, 0.5}};
  const auto same = rn_derivative(PointMap::identity(3), m, m);
  for (double v : same) CHECK(v == doctest::Approx(1.0));

  const PointMap empty(2, {std::nullopt, std::nullopt, std::nullopt});
  for (double v : rn_derivative(empty, r.m1, r.m2)) CHECK(v == 0.0);
}

TEST_CASE("criterion on the running example") {
  const Running r;
  const Criterion c = criterion(r.t, r.m1, r.m2, kTwo, kOne);
  CHECK(c.r == kTwo);
  const double oracle = std::sqrt(0.5 * 16.0 / 9.0 + 0.5 * 4.0 / 9.0);
  CHECK(c.norm_f == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(std::abs(c.norm_f - 1.054093) < 1e-6);
  CHECK(c.bound == doctest::Approx(oracle).epsilon(1e-14));

  const Criterion eq = criterion(r.t, r.m1, r.m2, kTwo, kTwo);
  CHECK(eq.r.is_infinite());
  CHECK(eq.norm_f == doctest::Approx(4.0 / 3));
  CHECK(eq.bound == doctest::Approx(std::sqrt(4.0 / 3)));

  const FiniteMeasureSpace prob{{0.25, 0.75}};
  const Criterion id = criterion(PointMap::identity(2), prob, prob, Exponent::rational(3), kOne);
  CHECK(id.bound == doctest::Approx(1.0));

  CHECK_THROWS_AS(criterion(r.t, r.m1, r.m2, kOne, kTwo), Error);
}

TEST_CASE("classical operator norms") {
  const Running r;
  const ClassicalOperator op = build_classical(r.t, r.m1, r.m2, kTwo, kOne);
  CHECK(op.within_bound);
  CHECK(op.exact_norm <= 1.054093 + 1e-6);
  // the Lagrange optimum attains the bound
  CHECK(op.exact_norm == doctest::Approx(op.criterion.bound).epsilon(1e-12));
  // direct ratio at the optimizer f = f_J^{(r-1)/q}
  const double direct = ratio(r.t, r.m1, r.m2, 2.0, 1.0, {4.0 / 3, 2.0 / 3});
  CHECK(direct == doctest::Approx(op.exact_norm).epsilon(1e-12));

  const FiniteMeasureSpace prob{{0.1, 0.6, 0.3}};
  const ClassicalOperator id = build_classical(PointMap::identity(3), prob, prob, Exponent::rational(3), kTwo);
  CHECK(id.exact_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.measured.lower_bound == doctest::Approx(1.0).epsilon(1e-8));

  const PointMap empty(2, {std::nullopt, std::nullopt, std::nullopt});
  const ClassicalOperator zero = build_classical(empty, r.m1, r.m2, kTwo, kOne);
  CHECK(zero.exact_norm == 0.0);
  CHECK(zero.op.matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("criterion is attained for q = 1 when f_J is constant") {
  // two atoms of X2 onto each atom of X1 with equal masses: f_J = 2
  const FiniteMeasureSpace m1{{0.5, 0.5}};
  const FiniteMeasureSpace m2{{0.5, 0.5, 0.5, 0.5}};
  const PointMap t(2, {0, 0, 1, 1});
  const ClassicalOperator op = build_classical(t, m1, m2, Exponent::rational(3), kOne);
  CHECK(std::abs(op.measured.lower_bound - op.criterion.bound) < 1e-6);
}

TEST_CASE("five-step pipeline") {
  const Running r;
  const Pipeline pl = five_step_pipeline(r.t, r.m1, r.m2, kTwo, kOne);
  CHECK(pl.steps.size() == 5);
  CHECK(pl.z == std::vector<std::size_t>{0, 1});
  REQUIRE(pl.sigma_t.blocks.size() == 2);
  CHECK(pl.sigma_t.blocks[0] == std::vector<std::size_t>{0, 1});
  CHECK(pl.sigma_t.blocks[1] == std::vector<std::size_t>{2});
  CHECK(pl.composite_residual < 1e-10);
  CHECK(pl.isometry_residual < 1e-10);

  const FiniteMeasureSpace m{{0.2, 0.8}};
  const Pipeline id = five_step_pipeline(PointMap::identity(2), m, m, kTwo, kTwo);
  for (const SuperOperator& s : id.steps) {
    CHECK((s.matrix() - Matrix::Identity(s.matrix().rows(), s.matrix().cols())).cwiseAbs().maxCoeff() < 1e-12);
  }

  const PointMap constant(2, {1, 1, 1});
  const Pipeline c = five_step_pipeline(constant, r.m1, r.m2, kTwo, kOne);
  CHECK(c.sigma_t.blocks.size() == 1);
  CHECK(c.steps[3].codomain().block_count() > c.steps[3].domain().block_count());
  CHECK(c.composite_residual < 1e-10);

  const PointMap empty(2, {std::nullopt, std::nullopt, std::nullopt});
  try {
    five_step_pipeline(empty, r.m1, r.m2, kTwo, kOne);
    FAIL("expected EmptySupport");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySupport);
  }
}

TEST_CASE("five-step pipeline on random spaces") {
  Rng rng(9);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  std::bernoulli_distribution in_y(0.8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(static_cast<std::size_t>(size(rng)));
    std::vector<double> b(static_cast<std::size_t>(size(rng)));
    for (double& v : a) v = mass(rng);
    for (double& v : b) v = mass(rng);
    std::uniform_int_distribution<std::size_t> target(0, a.size() - 1);
    std::vector<std::optional<std::size_t>> map(b.size());
    for (auto& m : map) {
      if (in_y(rng)) m = target(rng);
    }
    map[0] = target(rng);
    const PointMap t(a.size(), map);
    const FiniteMeasureSpace m1(a);
    const FiniteMeasureSpace m2(b);
    const Pipeline pl = five_step_pipeline(t, m1, m2, Exponent::rational(3), Exponent::rational(3, 2));
    CHECK(pl.composite_residual < 1e-10);
    CHECK(diagonal_consistency(t, m1, m2, Exponent::rational(3), Exponent::rational(3, 2)).agree);
  }
}

TEST_CASE("eps-delta modulus") {
  const std::vector<double> phi1{0.25, 0.25, 0.25, 0.25};
  const std::vector<double> phi0{0.7, 0.1, 0.1, 0.1};
  CHECK(eps_delta_modulus(phi0, phi1, 0.5) == 0.25);
  CHECK(eps_delta_modulus(phi0, phi1, 2.0) == std::numeric_limits<double>::infinity());
  const std::vector<double> self{0.1, 0.2, 0.3};
  CHECK(eps_delta_modulus(self, self, 0.25) == doctest::Approx(0.3));
  double prev = 0.0;
  for (double eps = 0.05; eps < 1.0; eps += 0.05) {
    const double d = eps_delta_modulus(phi0, phi1, eps);
    CHECK(d >= prev);
    prev = d;
  }
  try {
    eps_delta_modulus(std::vector<double>(21, 0.1), std::vector<double>(21, 0.1), 0.5);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("diagonal consistency") {
  const Running r;
  CHECK(diagonal_consistency(r.t, r.m1, r.m2, kTwo, kOne).agree);
  CHECK(diagonal_consistency(PointMap::identity(2), r.m1, r.m1, kTwo, kTwo).residual < 1e-14);
  const PointMap partial(2, {0, std::nullopt, 1});
  const DiagonalConsistency d = diagonal_consistency(partial, r.m1, r.m2, Exponent::infinity(), kOne);
  CHECK(d.agree);
}
