#ifndef ORDBUBBLE_RATIONAL_HPP
#define ORDBUBBLE_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ordbubble/error.hpp"

namespace ordbubble {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational in canonical reduced form with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long numerator, long long denominator = 1) {  // NOLINT(google-explicit-constructor)
    if (denominator == 0) throw Error(ErrorKind::ValidationError, "zero denominator");
    value_ = Value(BigInt(numerator), BigInt(denominator));
  }
  Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) throw Error(ErrorKind::ValidationError, "zero denominator");
    value_ = Value(numerator, denominator);
  }

  /// Parses "p" or "p/q".
  static Rational parse(std::string_view text) {
    auto integer = [](std::string_view t, bool sign_ok) {
      if (sign_ok && !t.empty() && t.front() == '-') t.remove_prefix(1);
      return !t.empty() && t.find_first_not_of("0123456789") == std::string_view::npos;
    };
    const auto cut = text.find('/');
    if (!integer(text.substr(0, cut), true) ||
        (cut != std::string_view::npos && !integer(text.substr(cut + 1), false)))
      throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
    try {
      const auto slash = text.find('/');
      if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)), BigInt(1));
      return Rational(BigInt(std::string(text.substr(0, slash))),
                      BigInt(std::string(text.substr(slash + 1))));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
    }
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const {
    const BigInt d = denominator();
    if (d == 1) return numerator().str();
    return numerator().str() + "/" + d.str();
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.value_ == 0) throw Error(ErrorKind::ValidationError, "division by zero");
    return Rational(a.value_ / b.value_);
  }
  Rational operator-() const { return Rational(Value(-value_)); }

  friend Rational abs(const Rational& a) { return a.value_ < 0 ? -a : a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Largest integer not exceeding the value.
  BigInt floor() const {
    const BigInt n = numerator(), d = denominator();
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
  }

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rational(Value v) : value_(std::move(v)) {}
  Value value_{0};
};

/// The fixed enumeration b1 = 0, b2 = 1, then the reduced fractions of (0, 1)
/// by increasing denominator and, within a denominator, increasing
/// numerator: 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...  Indices are 1-based.
class RationalEnumeration {
 public:
  Rational at(std::uint64_t index) const {
    if (index == 0) throw Error(ErrorKind::ValidationError, "enumeration is 1-based");
    if (index == 1) return Rational(0);
    if (index == 2) return Rational(1);
    std::uint64_t remaining = index - 3;
    for (std::uint64_t d = 2;; ++d)
      for (std::uint64_t p = 1; p < d; ++p)
        if (std::gcd(p, d) == 1) {
          if (remaining == 0)
            return Rational(static_cast<long long>(p), static_cast<long long>(d));
          --remaining;
        }
  }

  std::uint64_t index_of(const Rational& q) const {
    if (q == Rational(0)) return 1;
    if (q == Rational(1)) return 2;
    if (q < Rational(0) || q > Rational(1))
      throw Error(ErrorKind::ValidationError, "rational outside [0, 1]");
    const auto p = static_cast<std::uint64_t>(q.numerator());
    const auto d = static_cast<std::uint64_t>(q.denominator());
    std::uint64_t index = 3;
    for (std::uint64_t e = 2; e < d; ++e)
      for (std::uint64_t k = 1; k < e; ++k)
        if (std::gcd(k, e) == 1) ++index;
    for (std::uint64_t k = 1; k < p; ++k)
      if (std::gcd(k, d) == 1) ++index;
    return index;
  }

  /// The term of least index s >= 3 strictly between lo and hi, where
  /// 0 <= lo < hi <= 1. Terms from index 3 on are ordered by denominator, so
  /// this is the fraction of least denominator in the open interval, which
  /// is unique.
  Rational first_between(const Rational& lo, const Rational& hi) const {
    if (!(Rational(0) <= lo && lo < hi && hi <= Rational(1)))
      throw Error(ErrorKind::ValidationError, "interval must satisfy 0 <= lo < hi <= 1");
    return simplest_between(lo, hi);
  }

 private:
  // Least-denominator rational in the open interval (lo, hi), lo >= 0.
  static Rational simplest_between(const Rational& lo, const Rational& hi) {
    const BigInt whole = lo.floor();
    const Rational next_integer(whole + 1, BigInt(1));
    if (next_integer < hi) return next_integer;
    const Rational base(whole, BigInt(1));
    const Rational lo_frac = lo - base;
    const Rational hi_frac = hi - base;
    if (lo_frac == Rational(0)) {
      const Rational recip = Rational(1) / hi_frac;
      return base + Rational(BigInt(1), recip.floor() + 1);
    }
    return base + Rational(1) / simplest_between(Rational(1) / hi_frac, Rational(1) / lo_frac);
  }
};

}  // namespace ordbubble

#endif  // ORDBUBBLE_RATIONAL_HPP
