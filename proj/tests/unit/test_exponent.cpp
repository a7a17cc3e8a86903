#include "doctest.h"
#include "hlp/error.hpp"
#include "hlp/exponent.hpp"

using hlp::Exponent;
using hlp::ExponentTriple;
using hlp::Rational;

TEST_CASE("rational arithmetic stays reduced") {
  const Rational a(2, 4);
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  CHECK(a + Rational(1, 3) == Rational(5, 6));
  CHECK(a - Rational(1, 2) == Rational(0));
  CHECK(a * Rational(4, 3) == Rational(2, 3));
  CHECK(a / Rational(1, 4) == Rational(2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1, 0), hlp::Error);
}

TEST_CASE("exponent parsing is exact") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("infinity").is_infinite());
  const Exponent p = Exponent::parse("1.5");
  REQUIRE(p.is_exact());
  CHECK(*p.exact_inverse() == Rational(2, 3));
  CHECK(p.to_string() == "1.5");
  CHECK(Exponent::parse("4").value() == doctest::Approx(4.0));
  CHECK_THROWS_AS(Exponent::parse("0.5"), hlp::Error);
  CHECK_THROWS_AS(Exponent::parse("abc"), hlp::Error);
  try {
    Exponent::parse("0.5");
  } catch (const hlp::Error& e) {
    CHECK(e.code() == hlp::ErrorCode::BadExponent);
  }
}

TEST_CASE("conjugate exponents") {
  CHECK(Exponent::rational(2).conjugate() == Exponent::rational(2));
  CHECK(Exponent::rational(1).conjugate().is_infinite());
  CHECK(Exponent::infinity().conjugate() == Exponent::rational(1));
  CHECK(Exponent::rational(3).conjugate() == Exponent::rational(3, 2));
  const Exponent p = Exponent::from_double(3.14159265358979);
  CHECK(p.inverse() + p.conjugate().inverse() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ordering puts infinity last") {
  CHECK(Exponent::rational(2) < Exponent::rational(3));
  CHECK(Exponent::rational(3) < Exponent::infinity());
  CHECK_FALSE(Exponent::infinity() < Exponent::infinity());
  CHECK(Exponent::rational(3, 2) <= Exponent::rational(3, 2));
}

TEST_CASE("Holder triple") {
  const auto t = ExponentTriple::from_pq(Exponent::rational(3), Exponent::rational(3, 2));
  CHECK(t.r == Exponent::rational(3));
  CHECK(t.residual() < 1e-12);

  const auto same = ExponentTriple::from_pq(Exponent::rational(2), Exponent::rational(2));
  CHECK(same.r.is_infinite());

  const auto inf = ExponentTriple::from_pq(Exponent::infinity(), Exponent::rational(4));
  CHECK(inf.r == Exponent::rational(4));

  try {
    ExponentTriple::from_pq(Exponent::rational(2), Exponent::rational(3));
    FAIL("expected ExponentOrder");
  } catch (const hlp::Error& e) {
    CHECK(e.code() == hlp::ErrorCode::ExponentOrder);
  }
}

TEST_CASE("classical ratio exponent") {
  CHECK(hlp::classical_ratio_exponent(Exponent::rational(2), Exponent::rational(1)) == Exponent::rational(2));
  CHECK(hlp::classical_ratio_exponent(Exponent::rational(3), Exponent::rational(1)) == Exponent::rational(3, 2));
  CHECK(hlp::classical_ratio_exponent(Exponent::rational(2), Exponent::rational(2)).is_infinite());
  CHECK(hlp::classical_ratio_exponent(Exponent::infinity(), Exponent::rational(2)) == Exponent::rational(1));
}
