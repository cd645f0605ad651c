#include "stagecert/numeric.hpp"

#include <mpfr.h>

#include <algorithm>

namespace stagecert {

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::Domain, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::pow2(long k) {
  mpz_class p = 1;
  if (k >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  return Rational(BigInt(1), p);
}

Rational Rational::parse(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }),
          t.end());
  if (t.empty()) fail(ErrorKind::Usage, "empty rational literal");
  const auto slash = t.find('/');
  auto parse_int = [&](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) fail(ErrorKind::Usage, "bad rational literal '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') fail(ErrorKind::Usage, "bad rational literal '" + text + "'");
    return BigInt(s[0] == '+' ? s.substr(1) : s, 10);
  };
  if (slash == std::string::npos) return Rational(parse_int(t));
  const BigInt den = parse_int(t.substr(slash + 1));
  if (den == 0) fail(ErrorKind::Domain, "rational with zero denominator");
  return Rational(parse_int(t.substr(0, slash)), den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
  if (is_zero()) fail(ErrorKind::Domain, "inverse of zero");
  return Rational(den(), num());
}

Rational Rational::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(k));
  return Rational(mpq_class(n, d));
}

BigInt Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorKind::Domain, "division by zero");
  q_ /= o.q_;
  return *this;
}

// ---------------------------------------------------------------- integers

long bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

bool is_power_of_two(const BigInt& v) {
  return v > 0 && mpz_popcount(v.get_mpz_t()) == 1;
}

BigInt isqrt(const BigInt& v) {
  if (v < 0) fail(ErrorKind::Domain, "isqrt of negative integer");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(BigInt mantissa, long exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<long>(tz);
  }
}

bool Dyadic::is_dyadic(const Rational& r) { return is_power_of_two(r.den()); }

Dyadic Dyadic::from_rational(const Rational& r) {
  if (!is_dyadic(r)) fail(ErrorKind::Domain, "not a dyadic rational: " + r.str());
  return Dyadic(r.num(), -(bit_length(r.den()) - 1));
}

Rational Dyadic::to_rational() const { return Rational(mantissa_) * Rational::pow2(exponent_); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.mantissa_ == 0) return b;
  if (b.mantissa_ == 0) return a;
  const long e = std::min(a.exponent_, b.exponent_);
  mpz_class ma = a.mantissa_, mb = b.mantissa_;
  mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exponent_ - e));
  mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exponent_ - e));
  return Dyadic(ma + mb, e);
}

// ---------------------------------------------------------------- MPFR bridges

namespace {

struct Mpfr {
  explicit Mpfr(long prec) { mpfr_init2(v, static_cast<mpfr_prec_t>(std::max(prec, 16L))); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_t v;
};

Rational to_rational(const mpfr_t x) {
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  return Rational(m) * Rational::pow2(static_cast<long>(e));
}

void set_q(mpfr_t dst, const Rational& r, mpfr_rnd_t rnd) { mpfr_set_q(dst, r.raw().get_mpq_t(), rnd); }

// exponents far beyond this are not representable as MPFR floats or GMP integers
constexpr long kMaxValueExponent = 1L << 30;

}  // namespace

const char* to_string(Ordering3 o) {
  switch (o) {
    case Ordering3::Less: return "less";
    case Ordering3::Greater: return "greater";
    case Ordering3::Overlapping: return "overlapping";
  }
  return "overlapping";
}

// ---------------------------------------------------------------- LogMagnitude

LogMagnitude::LogMagnitude(std::optional<Rational> lo, std::optional<Rational> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ && hi_ && *lo_ > *hi_) fail(ErrorKind::Integrity, "log magnitude with lo > hi");
}

LogMagnitude LogMagnitude::of(const Rational& v, long precision_bits) {
  if (v.sign() <= 0) fail(ErrorKind::Domain, "log2 of non-positive value");
  if (is_power_of_two(v.num()) && is_power_of_two(v.den())) {
    const Rational e(bit_length(v.num()) - bit_length(v.den()));
    return exact_exponent(e);
  }
  Mpfr x(precision_bits), l(precision_bits);
  set_q(x.v, v, MPFR_RNDD);
  mpfr_log2(l.v, x.v, MPFR_RNDD);
  Rational lo = to_rational(l.v);
  set_q(x.v, v, MPFR_RNDU);
  mpfr_log2(l.v, x.v, MPFR_RNDU);
  Rational hi = to_rational(l.v);
  return {lo, hi};
}

LogMagnitude LogMagnitude::operator*(const LogMagnitude& o) const {
  std::optional<Rational> lo, hi;
  if (lo_ && o.lo_) lo = *lo_ + *o.lo_;
  if (hi_ && o.hi_) hi = *hi_ + *o.hi_;
  return {lo, hi};
}

LogMagnitude LogMagnitude::operator/(const LogMagnitude& o) const {
  std::optional<Rational> lo, hi;
  if (lo_ && o.hi_) lo = *lo_ - *o.hi_;
  if (hi_ && o.lo_) hi = *hi_ - *o.lo_;
  return {lo, hi};
}

LogMagnitude LogMagnitude::pow(const Rational& k) const {
  if (k.is_zero()) return exact_exponent(0);
  std::optional<Rational> lo, hi;
  if (k.sign() > 0) {
    if (lo_) lo = *lo_ * k;
    if (hi_) hi = *hi_ * k;
  } else {
    if (hi_) lo = *hi_ * k;
    if (lo_) hi = *lo_ * k;
  }
  return {lo, hi};
}

LogMagnitude LogMagnitude::plus(const LogMagnitude& o) const {
  std::optional<Rational> lo, hi;
  if (lo_ && o.lo_) lo = std::max(*lo_, *o.lo_);
  else if (lo_) lo = lo_;
  else if (o.lo_) lo = o.lo_;
  if (hi_ && o.hi_) {
    const Rational m = std::max(*hi_, *o.hi_);
    const Rational delta = (*hi_ - *o.hi_).abs();
    // log2(1 + 2^-delta) <= min(1, 2^(1 - floor delta))
    const BigInt fd = delta.floor();
    Rational extra = 1;
    if (fd > 1) extra = Rational::pow2(1 - (fd > 256 ? 256L : fd.get_si()));
    hi = m + extra;
  }
  return {lo, hi};
}

namespace {

std::optional<Rational> exp2_bound(const Rational& e, long precision_bits, bool upper) {
  if (e.abs() > Rational(kMaxValueExponent)) return std::nullopt;
  if (e.is_integer()) return Rational::pow2(e.num().get_si());
  Mpfr x(precision_bits), r(precision_bits);
  set_q(x.v, e, upper ? MPFR_RNDU : MPFR_RNDD);
  mpfr_exp2(r.v, x.v, upper ? MPFR_RNDU : MPFR_RNDD);
  return to_rational(r.v);
}

}  // namespace

std::optional<Rational> LogMagnitude::value_lower(long precision_bits) const {
  if (!lo_) return std::nullopt;
  if (*lo_ < Rational(-kMaxValueExponent)) return Rational(0);
  return exp2_bound(*lo_, precision_bits, false);
}

std::optional<Rational> LogMagnitude::value_upper(long precision_bits) const {
  if (!hi_) return std::nullopt;
  return exp2_bound(*hi_, precision_bits, true);
}

Ordering3 compare(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.hi_ && b.lo_ && *a.hi_ < *b.lo_) return Ordering3::Less;
  if (a.lo_ && b.hi_ && *a.lo_ > *b.hi_) return Ordering3::Greater;
  return Ordering3::Overlapping;
}

// ---------------------------------------------------------------- Magnitude

Magnitude::Magnitude(const Rational& exact) {
  if (exact.sign() <= 0) fail(ErrorKind::Domain, "magnitude must be positive");
  exact_ = exact;
}

Magnitude Magnitude::exp2(const Rational& e) {
  if (e.is_integer() && e.abs() <= Rational(static_cast<long>(kExactBitCap)))
    return Magnitude(Rational::pow2(e.num().get_si()));
  return Magnitude(LogMagnitude::exact_exponent(e));
}

Magnitude Magnitude::exp2(const Magnitude& x, bool negate) {
  if (x.exact_) return exp2(negate ? -*x.exact_ : *x.exact_);
  std::optional<Rational> lo = x.lower(), hi = x.upper();
  if (negate) {
    std::optional<Rational> nlo, nhi;
    if (hi) nlo = -*hi;
    if (lo) nhi = -*lo;
    return Magnitude(LogMagnitude(nlo, nhi));
  }
  return Magnitude(LogMagnitude(lo, hi));
}

LogMagnitude Magnitude::log() const {
  if (log_) return *log_;
  if (exact_) return LogMagnitude::of(*exact_);
  return {};
}

std::optional<Rational> Magnitude::lower() const {
  if (exact_) return exact_;
  return log().value_lower();
}

std::optional<Rational> Magnitude::upper() const {
  if (exact_) return exact_;
  return log().value_upper();
}

Magnitude Magnitude::operator*(const Magnitude& o) const {
  if (exact_ && o.exact_ && exact_->bit_size() + o.exact_->bit_size() <= kExactBitCap)
    return Magnitude(*exact_ * *o.exact_);
  return Magnitude(log() * o.log());
}

Magnitude Magnitude::operator/(const Magnitude& o) const {
  if (exact_ && o.exact_ && exact_->bit_size() + o.exact_->bit_size() <= kExactBitCap)
    return Magnitude(*exact_ / *o.exact_);
  return Magnitude(log() / o.log());
}

Magnitude Magnitude::operator+(const Magnitude& o) const {
  if (exact_ && o.exact_ && exact_->bit_size() + o.exact_->bit_size() <= kExactBitCap)
    return Magnitude(*exact_ + *o.exact_);
  return Magnitude(log().plus(o.log()));
}

Magnitude Magnitude::pow(long k) const {
  if (exact_ && exact_->bit_size() * static_cast<std::size_t>(std::labs(k) + 1) <= kExactBitCap)
    return Magnitude(exact_->pow(k));
  return Magnitude(log().pow(Rational(k)));
}

Ordering3 compare(const Magnitude& a, const Magnitude& b) {
  if (a.exact_ && b.exact_) {
    if (*a.exact_ < *b.exact_) return Ordering3::Less;
    if (*a.exact_ > *b.exact_) return Ordering3::Greater;
    return Ordering3::Overlapping;
  }
  return compare(a.log(), b.log());
}

// ---------------------------------------------------------------- CertifiedScalar

CertifiedScalar CertifiedScalar::enclosure(const Rational& lo, const Rational& hi) {
  if (lo > hi) fail(ErrorKind::Integrity, "enclosure with lo > hi");
  CertifiedScalar s(lo);
  s.hi_ = hi;
  s.exact_ = (lo == hi);
  return s;
}

const Rational& CertifiedScalar::value() const {
  if (!exact_) fail(ErrorKind::Integrity, "exact value requested from a proper enclosure");
  return lo_;
}

CertifiedScalar CertifiedScalar::operator+(const CertifiedScalar& o) const {
  return enclosure(lo_ + o.lo_, hi_ + o.hi_);
}

CertifiedScalar CertifiedScalar::operator-(const CertifiedScalar& o) const {
  return enclosure(lo_ - o.hi_, hi_ - o.lo_);
}

CertifiedScalar CertifiedScalar::operator-() const { return enclosure(-hi_, -lo_); }

CertifiedScalar CertifiedScalar::operator*(const CertifiedScalar& o) const {
  if (exact_ && o.exact_) return CertifiedScalar(lo_ * o.lo_);
  const Rational c[4] = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
  return enclosure(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Rational round_down(const Rational& v, long bits) {
  const Rational scaled = v * Rational::pow2(bits);
  return Rational(scaled.floor()) * Rational::pow2(-bits);
}

Rational round_up(const Rational& v, long bits) {
  const Rational scaled = v * Rational::pow2(bits);
  return Rational(scaled.ceil()) * Rational::pow2(-bits);
}

CertifiedScalar CertifiedScalar::widen(long bits) const {
  return enclosure(round_down(lo_, bits), round_up(hi_, bits));
}

Ordering3 cmp_certified(const CertifiedScalar& a, const CertifiedScalar& b) {
  if (a.hi() < b.lo()) return Ordering3::Less;
  if (a.lo() > b.hi()) return Ordering3::Greater;
  return Ordering3::Overlapping;
}

namespace {

// floor(sqrt(v) * 2^b) / 2^b
Rational sqrt_floor(const Rational& v, long b) {
  BigInt n = v.num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * b));
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), v.den().get_mpz_t());
  return Rational(isqrt(q)) * Rational::pow2(-b);
}

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (mpz_perfect_square_p(v.num().get_mpz_t()) && mpz_perfect_square_p(v.den().get_mpz_t()))
    return Rational(isqrt(v.num()), isqrt(v.den()));
  return std::nullopt;
}

}  // namespace

CertifiedScalar sqrt_enclosure(const CertifiedScalar& a, long precision_bits) {
  if (a.lo().sign() < 0) fail(ErrorKind::Domain, "square root of a negative value");
  if (precision_bits <= 0) fail(ErrorKind::Domain, "precision must be positive");
  if (a.is_exact()) {
    if (auto r = exact_sqrt(a.lo())) return CertifiedScalar(*r);
  }
  Rational lo = a.lo().is_zero() ? Rational(0) : sqrt_floor(a.lo(), precision_bits);
  if (auto r = exact_sqrt(a.lo())) lo = *r;
  Rational hi;
  if (auto r = exact_sqrt(a.hi())) {
    hi = *r;
  } else {
    hi = sqrt_floor(a.hi(), precision_bits) + Rational::pow2(-precision_bits);
  }
  return CertifiedScalar::enclosure(lo, hi);
}

}  // namespace stagecert
