#include "stagecert/verified.hpp"

#include <mpfr.h>

#include <Eigen/Eigenvalues>
#include <cmath>

namespace stagecert {

namespace {

class Real {
 public:
  explicit Real(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

Rational to_rational(mpfr_srcptr x) {
  BigInt m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  return Rational(m) * Rational::pow2(e);
}

using RealVec = std::vector<Real>;

struct Square {
  std::size_t n;
  long prec;
  RealVec v;
  Square(std::size_t size, long p) : n(size), prec(p), v(size * size, Real(p)) {}
  mpfr_ptr operator()(std::size_t i, std::size_t j) { return v[i * n + j].get(); }
  mpfr_srcptr operator()(std::size_t i, std::size_t j) const { return v[i * n + j].get(); }
};

Square nearest(const RationalMatrix& m, long prec) {
  Square s(m.rows(), prec);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) mpfr_set_q(s(i, j), m(i, j).raw().get_mpq_t(), MPFR_RNDN);
  return s;
}

// Unit lower L and positive d with A ~ L diag(d) L^T; on a nonpositive pivot returns its index.
struct Ldl {
  Square L;
  RealVec d;
  std::size_t failed;  // n when every pivot is positive
};

Ldl approximate_ldl(const Square& a) {
  const std::size_t n = a.n;
  Ldl f{Square(n, a.prec), RealVec(n, Real(a.prec)), n};
  Real t(a.prec), u(a.prec);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      // L_ki d_i = a_ki - sum_{m<i} L_km L_im d_m
      mpfr_set(t.get(), a(k, i), MPFR_RNDN);
      for (std::size_t m = 0; m < i; ++m) {
        mpfr_mul(u.get(), f.L(k, m), f.L(i, m), MPFR_RNDN);
        mpfr_mul(u.get(), u.get(), f.d[m].get(), MPFR_RNDN);
        mpfr_sub(t.get(), t.get(), u.get(), MPFR_RNDN);
      }
      mpfr_div(f.L(k, i), t.get(), f.d[i].get(), MPFR_RNDN);
    }
    mpfr_set_ui(f.L(k, k), 1, MPFR_RNDN);
    mpfr_set(t.get(), a(k, k), MPFR_RNDN);
    for (std::size_t m = 0; m < k; ++m) {
      mpfr_sqr(u.get(), f.L(k, m), MPFR_RNDN);
      mpfr_mul(u.get(), u.get(), f.d[m].get(), MPFR_RNDN);
      mpfr_sub(t.get(), t.get(), u.get(), MPFR_RNDN);
    }
    mpfr_set(f.d[k].get(), t.get(), MPFR_RNDN);
    if (!(mpfr_sgn(t.get()) > 0) || mpfr_nan_p(t.get())) {
      f.failed = k;
      return f;
    }
  }
  return f;
}

// V = L^-T restricted to columns 0..cols-1 (upper unit triangular)
Square inverse_transpose(const Square& L, std::size_t cols) {
  const std::size_t n = L.n;
  Square V(n, L.prec);
  Real t(L.prec), u(L.prec);
  for (std::size_t j = 0; j < cols; ++j) {
    mpfr_set_ui(V(j, j), 1, MPFR_RNDN);
    for (std::size_t i = j; i-- > 0;) {
      mpfr_set_zero(t.get(), 1);
      for (std::size_t k = i + 1; k <= j; ++k) {
        mpfr_mul(u.get(), L(k, i), V(k, j), MPFR_RNDN);
        mpfr_add(t.get(), t.get(), u.get(), MPFR_RNDN);
      }
      mpfr_neg(V(i, j), t.get(), MPFR_RNDN);
    }
  }
  return V;
}

struct Interval {
  Real lo, hi;
  explicit Interval(long p) : lo(p), hi(p) {}
};

// [lo, hi] += [mlo, mhi] * x for a point x
void add_product(Interval& acc, mpfr_srcptr mlo, mpfr_srcptr mhi, mpfr_srcptr x, Real& t) {
  if (mpfr_zero_p(x)) return;
  const bool pos = mpfr_sgn(x) > 0;
  mpfr_mul(t.get(), pos ? mlo : mhi, x, MPFR_RNDD);
  mpfr_add(acc.lo.get(), acc.lo.get(), t.get(), MPFR_RNDD);
  mpfr_mul(t.get(), pos ? mhi : mlo, x, MPFR_RNDU);
  mpfr_add(acc.hi.get(), acc.hi.get(), t.get(), MPFR_RNDU);
}

struct Enclosure {
  Square lo, hi;
};

Enclosure enclose(const RationalMatrix& m, long prec) {
  Enclosure e{Square(m.rows(), prec), Square(m.rows(), prec)};
  for (std::size_t i = 0; i < e.lo.n; ++i)
    for (std::size_t j = 0; j < e.lo.n; ++j) {
      mpfr_set_q(e.lo(i, j), m(i, j).raw().get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(e.hi(i, j), m(i, j).raw().get_mpq_t(), MPFR_RNDU);
    }
  return e;
}

// [lo, hi] += [alo, ahi] * [blo, bhi]
void add_interval_product(Interval& acc, mpfr_srcptr alo, mpfr_srcptr ahi, mpfr_srcptr blo, mpfr_srcptr bhi,
                          Real& t) {
  const long p = mpfr_get_prec(acc.lo.get());
  Real lo(p), hi(p);
  bool first = true;
  for (mpfr_srcptr a : {alo, ahi})
    for (mpfr_srcptr b : {blo, bhi}) {
      mpfr_mul(t.get(), a, b, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), a, b, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  mpfr_add(acc.lo.get(), acc.lo.get(), lo.get(), MPFR_RNDD);
  mpfr_add(acc.hi.get(), acc.hi.get(), hi.get(), MPFR_RNDU);
}

// enclosure of x^T M x for x in the box [xlo, xhi]
Interval quadratic_form(const Enclosure& m, const RealVec& xlo, const RealVec& xhi, long prec) {
  const std::size_t n = m.lo.n;
  Interval total(prec);
  Real t(prec);
  for (std::size_t i = 0; i < n; ++i) {
    if (mpfr_zero_p(xlo[i].get()) && mpfr_zero_p(xhi[i].get())) continue;
    Interval row(prec);
    for (std::size_t j = 0; j < n; ++j)
      add_interval_product(row, m.lo(i, j), m.hi(i, j), xlo[j].get(), xhi[j].get(), t);
    add_interval_product(total, row.lo.get(), row.hi.get(), xlo[i].get(), xhi[i].get(), t);
  }
  return total;
}

Interval quadratic_form(const Enclosure& m, const RealVec& x, long prec) { return quadratic_form(m, x, x, prec); }

RealVec to_reals(const RVec& x, long prec, mpfr_rnd_t rnd) {
  RealVec out(x.size(), Real(prec));
  for (std::size_t i = 0; i < x.size(); ++i) mpfr_set_q(out[i].get(), x[i].raw().get_mpq_t(), rnd);
  return out;
}

bool dominant(const Enclosure& e, const Square& X, long prec) {
  const std::size_t n = X.n;
  // Y = M X, then C = X^T Y, both enclosed
  std::vector<Interval> Y(n * n, Interval(prec));
  Real t(prec);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k-- > 0;)  // X is upper triangular
        add_product(Y[i * n + j], e.lo(i, k), e.hi(i, k), X(k, j), t);
  Real off(prec), mag(prec);
  for (std::size_t i = 0; i < n; ++i) {
    mpfr_set_zero(off.get(), 1);
    Interval diag(prec);
    for (std::size_t j = 0; j < n; ++j) {
      Interval c(prec);
      for (std::size_t k = 0; k <= i; ++k) add_product(c, Y[k * n + j].lo.get(), Y[k * n + j].hi.get(), X(k, i), t);
      if (j == i) {
        diag = c;
        continue;
      }
      mpfr_abs(mag.get(), c.lo.get(), MPFR_RNDU);
      if (mpfr_cmpabs(c.hi.get(), mag.get()) > 0) mpfr_abs(mag.get(), c.hi.get(), MPFR_RNDU);
      mpfr_add(off.get(), off.get(), mag.get(), MPFR_RNDU);
    }
    if (!(mpfr_cmp(diag.lo.get(), off.get()) > 0)) return false;
  }
  return true;
}

}  // namespace

DefinitenessCertificate certify_positive_definite(const RationalMatrix& m, long start_precision,
                                                  long max_precision) {
  if (!m.is_symmetric()) fail(ErrorKind::Domain, "definiteness certificate of a non-symmetric matrix");
  DefinitenessCertificate out;
  const std::size_t n = m.rows();
  if (n == 0) {
    out.result = Definiteness::Positive;
    return out;
  }
  for (long p = std::max(start_precision, 64L); p <= max_precision; p *= 2) {
    out.precision = p;
    const Ldl f = approximate_ldl(nearest(m, p));
    const Enclosure e = enclose(m, p);
    if (f.failed < n) {
      // x_k = 1 and L^T x = e_k on the leading block gives x^T M x ~ d_k <= 0
      const Square V = inverse_transpose(f.L, f.failed + 1);
      RealVec x(n, Real(p));
      for (std::size_t i = 0; i <= f.failed; ++i) mpfr_set(x[i].get(), V(i, f.failed), MPFR_RNDN);
      const Interval q = quadratic_form(e, x, p);
      if (mpfr_sgn(q.lo.get()) > 0) continue;
      RVec w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = to_rational(x[i].get());
      // a sign-ambiguous enclosure is settled by the exact form
      if (mpfr_sgn(q.hi.get()) < 0 || quadratic(m, w).sign() <= 0) {
        out.result = Definiteness::NotPositive;
        out.witness = std::move(w);
        return out;
      }
      continue;
    }
    Square X = inverse_transpose(f.L, n);
    for (std::size_t j = 0; j < n; ++j) {
      // scale column j by a power of two near d_j^-1/2
      const long ex = mpfr_get_exp(f.d[j].get());
      for (std::size_t i = 0; i <= j; ++i) mpfr_mul_2si(X(i, j), X(i, j), -ex / 2, MPFR_RNDN);
    }
    if (dominant(e, X, p)) {
      out.result = Definiteness::Positive;
      return out;
    }
  }
  out.result = Definiteness::Unknown;
  return out;
}

RatioBounds ratio_bounds(const RationalMatrix& a, const RationalMatrix& b, const RVec& x, long precision) {
  RatioBounds out;
  const long p = std::max(precision, 64L);
  const RealVec xlo = to_reals(x, p, MPFR_RNDD), xhi = to_reals(x, p, MPFR_RNDU);
  const Interval num = quadratic_form(enclose(a, p), xlo, xhi, p);
  const Interval den = quadratic_form(enclose(b, p), xlo, xhi, p);
  if (!(mpfr_sgn(den.lo.get()) > 0)) return out;
  Real lo(p), hi(p);
  if (mpfr_sgn(num.lo.get()) >= 0) mpfr_div(lo.get(), num.lo.get(), den.hi.get(), MPFR_RNDD);
  else mpfr_div(lo.get(), num.lo.get(), den.lo.get(), MPFR_RNDD);
  if (mpfr_sgn(num.hi.get()) >= 0) mpfr_div(hi.get(), num.hi.get(), den.lo.get(), MPFR_RNDU);
  else mpfr_div(hi.get(), num.hi.get(), den.hi.get(), MPFR_RNDU);
  out.lo = to_rational(lo.get());
  out.hi = to_rational(hi.get());
  out.valid = true;
  return out;
}

EigenEstimate dominant_eigenvector(const RationalMatrix& a, const RationalMatrix& b, long precision) {
  EigenEstimate out;
  const std::size_t n = b.rows();
  const long p = std::max(precision, 64L);
  const Ldl f = approximate_ldl(nearest(b, p));
  if (f.failed < n) return out;
  // W = L^-T D^-1/2 turns the pencil into W^T A W
  Square W = inverse_transpose(f.L, n);
  Real s(p), t(p);
  for (std::size_t j = 0; j < n; ++j) {
    mpfr_rec_sqrt(s.get(), f.d[j].get(), MPFR_RNDN);
    for (std::size_t i = 0; i <= j; ++i) mpfr_mul(W(i, j), W(i, j), s.get(), MPFR_RNDN);
  }
  const Square A = nearest(a, p);
  Square AW(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k <= j; ++k) {
        mpfr_mul(t.get(), A(i, k), W(k, j), MPFR_RNDN);
        mpfr_add(AW(i, j), AW(i, j), t.get(), MPFR_RNDN);
      }
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat C(n, n);
  Real c(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      mpfr_set_zero(c.get(), 1);
      for (std::size_t k = 0; k <= i; ++k) {
        mpfr_mul(t.get(), W(k, i), AW(k, j), MPFR_RNDN);
        mpfr_add(c.get(), c.get(), t.get(), MPFR_RNDN);
      }
      C(i, j) = C(j, i) = mpfr_get_ld(c.get(), MPFR_RNDN);
    }
  if (!C.allFinite()) return out;
  Eigen::SelfAdjointEigenSolver<Mat> es(C);
  if (es.info() != Eigen::Success) return out;
  out.mu = static_cast<double>(es.eigenvalues()(n - 1));
  RealVec y(n, Real(p));
  for (std::size_t k = 0; k < n; ++k) mpfr_set_ld(y[k].get(), es.eigenvectors()(k, n - 1), MPFR_RNDN);
  out.x.assign(n, Rational());
  Real acc(p);
  for (std::size_t i = 0; i < n; ++i) {
    mpfr_set_zero(acc.get(), 1);
    for (std::size_t j = i; j < n; ++j) {
      mpfr_mul(t.get(), W(i, j), y[j].get(), MPFR_RNDN);
      mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
    }
    out.x[i] = to_rational(acc.get());
  }
  out.ok = std::isfinite(out.mu);
  return out;
}

}  // namespace stagecert
