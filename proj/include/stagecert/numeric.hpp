#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "stagecert/error.hpp"

namespace stagecert {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}          // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}         // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  template <class U>
  Rational(const __gmp_expr<mpz_t, U>& e) : q_(BigInt(e)) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// 2^k for any signed k.
  static Rational pow2(long k);
  /// Parses "p", "-p/q" (decimal integers only).
  static Rational parse(const std::string& text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(long k) const;
  /// floor and ceiling as integers
  BigInt floor() const;
  BigInt ceil() const;

  /// Total size in bits of numerator and denominator.
  std::size_t bit_size() const;

  /// Nearest double (may under/overflow); diagnostics and numerical estimates only.
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

/// mantissa * 2^exponent with odd mantissa (or zero, exponent 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, long exponent);

  static Dyadic pow2(long k) { return Dyadic(1, k); }
  /// Throws Domain if the denominator is not a power of two.
  static Dyadic from_rational(const Rational& r);
  static bool is_dyadic(const Rational& r);

  const BigInt& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }
  Rational to_rational() const;

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }

 private:
  void normalize();
  BigInt mantissa_ = 0;
  long exponent_ = 0;
};

/// 2^k as an exact rational; shorthand used everywhere powers of two appear.
inline Rational pow2(long k) { return Rational::pow2(k); }

/// Integer log2 helpers on exact values.
long bit_length(const BigInt& v);  // floor(log2 |v|) + 1, 0 for v == 0
bool is_power_of_two(const BigInt& v);
BigInt isqrt(const BigInt& v);     // floor(sqrt(v)), v >= 0

enum class Ordering3 { Less, Greater, Overlapping };
const char* to_string(Ordering3 o);

/// Certified bounds on log2 of a positive quantity. A missing bound is unbounded.
class LogMagnitude {
 public:
  LogMagnitude() = default;
  LogMagnitude(std::optional<Rational> lo, std::optional<Rational> hi);

  /// log2 of 2^e, exactly.
  static LogMagnitude exact_exponent(const Rational& e) { return {e, e}; }
  /// Directed-rounding enclosure of log2(v) for v > 0 at the given working precision.
  static LogMagnitude of(const Rational& v, long precision_bits = 256);

  const std::optional<Rational>& lo() const { return lo_; }
  const std::optional<Rational>& hi() const { return hi_; }

  LogMagnitude operator*(const LogMagnitude& o) const;  // adds bounds
  LogMagnitude operator/(const LogMagnitude& o) const;
  /// raise to a rational power (negative powers swap the bounds)
  LogMagnitude pow(const Rational& k) const;
  /// certified enclosure of log2(2^a + 2^b)
  LogMagnitude plus(const LogMagnitude& o) const;

  /// Rational bounds on the quantity itself, when representable.
  std::optional<Rational> value_lower(long precision_bits = 256) const;
  std::optional<Rational> value_upper(long precision_bits = 256) const;

  friend Ordering3 compare(const LogMagnitude& a, const LogMagnitude& b);

 private:
  std::optional<Rational> lo_;
  std::optional<Rational> hi_;
};

/// Positive quantity that is exact while it stays small and falls back to log bounds.
class Magnitude {
 public:
  static constexpr std::size_t kExactBitCap = 1u << 20;

  Magnitude() = default;
  Magnitude(const Rational& exact);  // NOLINT(google-explicit-constructor)
  explicit Magnitude(const LogMagnitude& log) : log_(log) {}

  /// 2^e with e an exact rational (exact when e is an integer of moderate size).
  static Magnitude exp2(const Rational& e);
  /// 2^x with x given by a Magnitude (x >= 0) or its negation.
  static Magnitude exp2(const Magnitude& x, bool negate = false);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }
  LogMagnitude log() const;
  /// rational value bounds
  std::optional<Rational> lower() const;
  std::optional<Rational> upper() const;

  Magnitude operator*(const Magnitude& o) const;
  Magnitude operator/(const Magnitude& o) const;
  Magnitude operator+(const Magnitude& o) const;
  Magnitude pow(long k) const;

  friend Ordering3 compare(const Magnitude& a, const Magnitude& b);

 private:
  std::optional<Rational> exact_;
  std::optional<LogMagnitude> log_;
};

/// Exact rational, or an enclosure [lo, hi] with rational endpoints.
class CertifiedScalar {
 public:
  CertifiedScalar() : lo_(0), hi_(0), exact_(true) {}
  CertifiedScalar(const Rational& v) : lo_(v), hi_(v), exact_(true) {}  // NOLINT
  static CertifiedScalar exact(const Rational& v) { return CertifiedScalar(v); }
  static CertifiedScalar enclosure(const Rational& lo, const Rational& hi);

  bool is_exact() const { return exact_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  /// exact value; throws Integrity if this is a proper enclosure
  const Rational& value() const;
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }

  CertifiedScalar operator+(const CertifiedScalar& o) const;
  CertifiedScalar operator-(const CertifiedScalar& o) const;
  CertifiedScalar operator*(const CertifiedScalar& o) const;
  CertifiedScalar operator-() const;

  /// Outward rounding of both endpoints to multiples of 2^-bits.
  CertifiedScalar widen(long bits) const;

 private:
  Rational lo_, hi_;
  bool exact_;
};

Ordering3 cmp_certified(const CertifiedScalar& a, const CertifiedScalar& b);

/// Enclosure of sqrt(a) of width <= 2^-bits * max(1, sqrt(a)); exact for rational squares.
CertifiedScalar sqrt_enclosure(const CertifiedScalar& a, long precision_bits);

/// Directed rounding of a rational to a multiple of 2^-bits.
Rational round_down(const Rational& v, long bits);
Rational round_up(const Rational& v, long bits);

}  // namespace stagecert
