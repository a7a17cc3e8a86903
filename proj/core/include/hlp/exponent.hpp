#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hlp {

/// Exact rational with 64-bit numerator and positive denominator, always reduced.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const noexcept { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// An L^p exponent p in [1, inf].
///
/// Stored through its reciprocal 1/p in [0, 1] so that p = inf is the exact
/// value 0 and Holder bookkeeping (1/q = 1/p + 1/r, 1/p + 1/p* = 1) stays in
/// exact rational arithmetic whenever the inputs are rational. Exponents that
/// have no small rational form fall back to a real reciprocal.
class Exponent {
 public:
  /// p = 1.
  Exponent();

  static Exponent infinity();
  /// Exact rational exponent p = num/den.
  static Exponent rational(std::int64_t num, std::int64_t den = 1);
  /// Exponent from a double; recovers an exact rational when one with a
  /// denominator <= 1000 matches to 1e-12.
  static Exponent from_double(double p);
  /// Parses "inf" / "infinity" or a decimal literal such as "1.5" (exactly).
  static Exponent parse(std::string_view text);
  /// Exponent with the given reciprocal 1/p in [0, 1].
  static Exponent from_inverse(const Rational& inv);
  static Exponent from_inverse(double inv);

  bool is_infinite() const noexcept;
  bool is_exact() const noexcept { return exact_.has_value(); }
  /// p as a double; +inf for the infinite exponent.
  double value() const noexcept;
  /// 1/p as a double (0 for p = inf).
  double inverse() const noexcept;
  std::optional<Rational> exact_inverse() const { return exact_; }

  /// Holder conjugate p* with 1/p + 1/p* = 1.
  Exponent conjugate() const;

  /// "inf" or the shortest decimal/fraction form ("2", "1.5", "4/3").
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b);
  /// Ordered by p (so inf is largest).
  friend bool operator<(const Exponent& a, const Exponent& b);
  friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }

 private:
  std::optional<Rational> exact_;
  double inv_ = 1.0;
};

/// Exponents (p, q, r) with q <= p and 1/q = 1/p + 1/r; r = inf when p = q.
struct ExponentTriple {
  Exponent p;
  Exponent q;
  Exponent r;

  /// Throws ExponentOrder if q > p.
  static ExponentTriple from_pq(const Exponent& p, const Exponent& q);
  /// Residual |1/q - 1/p - 1/r|.
  double residual() const noexcept;
};

/// Ratio r = p/(p-q) of the classical boundedness criterion, i.e. the Holder
/// exponent for the pair (p/q, 1). Equals 1 when p = inf and inf when p = q.
Exponent classical_ratio_exponent(const Exponent& p, const Exponent& q);

}  // namespace hlp
