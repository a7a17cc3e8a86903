#include "hlp/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "hlp/error.hpp"

namespace hlp {

namespace {

constexpr std::int64_t kMaxDen = 1000;

__extension__ typedef __int128 Wide;

std::int64_t checked(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::BadExponent, "rational overflow");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(Wide num, Wide den) {
  if (den == 0) throw Error(ErrorCode::BadExponent, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked(num), checked(den));
}

std::optional<Rational> rationalize(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  for (std::int64_t den = 1; den <= kMaxDen; ++den) {
    double num = std::round(x * static_cast<double>(den));
    if (std::abs(num / static_cast<double>(den) - x) <= 1e-12 * std::max(1.0, std::abs(x))) {
      return Rational(static_cast<std::int64_t>(num), den);
    }
  }
  return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::BadExponent, "zero denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
              static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
              static_cast<Wide>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<Wide>(a.num_) * b.den_ < static_cast<Wide>(b.num_) * a.den_;
}

Exponent::Exponent() : exact_(Rational(1)), inv_(1.0) {}

Exponent Exponent::infinity() { return from_inverse(Rational(0)); }

Exponent Exponent::rational(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw Error(ErrorCode::BadExponent, "exponent must be positive");
  return from_inverse(Rational(den, num));
}

Exponent Exponent::from_inverse(const Rational& inv) {
  if (inv < Rational(0) || Rational(1) < inv) {
    throw Error(ErrorCode::BadExponent, "exponent must lie in [1, inf]");
  }
  Exponent e;
  e.exact_ = inv;
  e.inv_ = inv.value();
  return e;
}

Exponent Exponent::from_inverse(double inv) {
  if (!(inv >= -1e-15 && inv <= 1.0 + 1e-15)) {
    throw Error(ErrorCode::BadExponent, "exponent must lie in [1, inf]");
  }
  if (auto r = rationalize(inv)) return from_inverse(*r);
  Exponent e;
  e.exact_.reset();
  e.inv_ = std::clamp(inv, 0.0, 1.0);
  return e;
}

Exponent Exponent::from_double(double p) {
  if (std::isinf(p) && p > 0) return infinity();
  if (!(p >= 1.0)) throw Error(ErrorCode::BadExponent, "exponent must be >= 1, got " + std::to_string(p));
  if (auto r = rationalize(p)) return from_inverse(Rational(r->den(), r->num()));
  Exponent e;
  e.exact_.reset();
  e.inv_ = 1.0 / p;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s == "inf" || s == "infinity" || s == "Inf" || s == "INF") return infinity();
  if (s.empty()) throw Error(ErrorCode::BadExponent, "empty exponent");

  // Exact decimal: digits [. digits]
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_dot = false;
  bool any_digit = false;
  for (char c : s) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      any_digit = true;
      if (num > 100000000000LL || den > 100000000000LL) {
        throw Error(ErrorCode::BadExponent, "too many digits in exponent '" + s + "'");
      }
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
    } else {
      throw Error(ErrorCode::BadExponent, "cannot parse exponent '" + s + "'");
    }
  }
  if (!any_digit) throw Error(ErrorCode::BadExponent, "cannot parse exponent '" + s + "'");
  Rational p(num, den);
  if (p < Rational(1)) throw Error(ErrorCode::BadExponent, "exponent must be >= 1, got '" + s + "'");
  return from_inverse(Rational(p.den(), p.num()));
}

bool Exponent::is_infinite() const noexcept {
  if (exact_) return exact_->is_zero();
  return inv_ == 0.0;
}

double Exponent::value() const noexcept {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  if (exact_) return static_cast<double>(exact_->den()) / static_cast<double>(exact_->num());
  return 1.0 / inv_;
}

double Exponent::inverse() const noexcept { return exact_ ? exact_->value() : inv_; }

Exponent Exponent::conjugate() const {
  if (exact_) return from_inverse(Rational(1) - *exact_);
  return from_inverse(1.0 - inv_);
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  if (exact_) {
    const std::int64_t n = exact_->den();  // p = den/num of the reciprocal
    const std::int64_t d = exact_->num();
    if (d == 1) {
      os << n;
      return os.str();
    }
    // Terminating decimal when d has only factors 2 and 5.
    std::int64_t t = d;
    while (t % 2 == 0) t /= 2;
    while (t % 5 == 0) t /= 5;
    if (t == 1) {
      os.precision(15);
      os << static_cast<double>(n) / static_cast<double>(d);
      return os.str();
    }
    os << n << "/" << d;
    return os.str();
  }
  os.precision(12);
  os << value();
  return os.str();
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return std::abs(a.inverse() - b.inverse()) <= 1e-14;
}

bool operator<(const Exponent& a, const Exponent& b) {
  // larger p <=> smaller reciprocal
  if (a.exact_ && b.exact_) return *b.exact_ < *a.exact_;
  return b.inverse() < a.inverse() - 1e-14;
}

ExponentTriple ExponentTriple::from_pq(const Exponent& p, const Exponent& q) {
  if (p < q) {
    throw Error(ErrorCode::ExponentOrder,
                "q = " + q.to_string() + " exceeds p = " + p.to_string() + " (only q <= p is supported)");
  }
  ExponentTriple t{p, q, Exponent::infinity()};
  if (p.exact_inverse() && q.exact_inverse()) {
    t.r = Exponent::from_inverse(*q.exact_inverse() - *p.exact_inverse());
  } else {
    t.r = Exponent::from_inverse(std::max(0.0, q.inverse() - p.inverse()));
  }
  return t;
}

double ExponentTriple::residual() const noexcept { return std::abs(q.inverse() - p.inverse() - r.inverse()); }

Exponent classical_ratio_exponent(const Exponent& p, const Exponent& q) {
  if (p < q) {
    throw Error(ErrorCode::ExponentOrder,
                "q = " + q.to_string() + " exceeds p = " + p.to_string() + " (only q <= p is supported)");
  }
  if (q.is_infinite()) return Exponent::infinity();
  // r = p/(p-q)  <=>  1/r = 1 - q/p
  if (p.exact_inverse() && q.exact_inverse()) {
    const Rational inv_p = *p.exact_inverse();
    const Rational inv_q = *q.exact_inverse();
    return Exponent::from_inverse(Rational(1) - inv_p / inv_q);
  }
  return Exponent::from_inverse(1.0 - p.inverse() / q.inverse());
}

}  // namespace hlp
