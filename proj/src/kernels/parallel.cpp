#include <omp.h>

#include "stagecert/kernels.hpp"

namespace stagecert::kernels::parallel {

std::vector<RVec> lagrange_coefficients(long lo, long d) {
  // Q(t) = prod_m (t - 2^-m), then Q / (t - 2^-i) by synthetic division
  RVec q(d + 1);
  q[0] = 1;
  for (long m = 0; m < d; ++m) {
    const Rational rm = Rational::pow2(-m);
    for (long k = m + 1; k >= 1; --k) q[k] = q[k - 1] - rm * q[k];
    q[0] = -rm * q[0];
  }
  std::vector<RVec> out(d, RVec(d));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < d; ++i) {
    const Rational ri = Rational::pow2(-i);
    RVec quot(d);
    quot[d - 1] = q[d];
    for (long k = d - 1; k >= 1; --k) quot[k - 1] = q[k] + ri * quot[k];
    Rational denom = 1;
    for (long m = 0; m < d; ++m)
      if (m != i) denom *= ri - Rational::pow2(-m);
    const Rational scale = Rational::pow2(i * (1 + lo)) / denom;
    for (long t = 0; t < d; ++t) out[i][t] = scale * quot[t];
  }
  return out;
}

RationalMatrix gram(const KernelInput& in) {
  const long d = static_cast<long>(in.dim());
  RationalMatrix g(d, d);
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < d; ++j) {
    for (long k = j; k < d; ++k) {
      Rational num = in.lambda[j] * in.lambda[k];
      if (!num.is_zero()) {
        Rational den = 1;
        for (const auto& c : in.chars) den *= Rational(1) - c[j] * c[k];
        num /= den;
        if (j == k && !in.e_diag.empty()) num *= in.e_diag[j];
      }
      g(j, k) = num;
    }
  }
  for (long j = 0; j < d; ++j)
    for (long k = 0; k < j; ++k) g(j, k) = g(k, j);
  return g;
}

RationalMatrix gram_truncated(const KernelInput& in, long degree) {
  const long d = static_cast<long>(in.dim());
  RationalMatrix g(d, d);
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < d; ++j) {
    RVec h(degree + 1);
    for (long k = j; k < d; ++k) {
      Rational v = in.lambda[j] * in.lambda[k];
      if (!v.is_zero()) {
        std::fill(h.begin(), h.end(), Rational());
        h[0] = 1;
        for (const auto& c : in.chars) {
          const Rational w = c[j] * c[k];
          for (long m = 1; m <= degree; ++m) h[m] += w * h[m - 1];
        }
        Rational total;
        for (const auto& x : h) total += x;
        v *= total;
        if (j == k && !in.e_diag.empty()) v *= in.e_diag[j];
      }
      g(j, k) = v;
    }
  }
  for (long j = 0; j < d; ++j)
    for (long k = 0; k < j; ++k) g(j, k) = g(k, j);
  return g;
}

namespace {

struct Walker {
  const KernelInput& in;
  long degree;
  RVec& acc;

  void leaf(const RVec& vec, long used) {
    Rational lin, extra;
    for (std::size_t t = 0; t < vec.size(); ++t) {
      lin += vec[t];
      if (!in.e_diag.empty()) extra += (in.e_diag[t] - 1) * vec[t] * vec[t];
    }
    acc[used] += lin * lin + extra;
  }

  void walk(std::size_t s, long used, RVec vec) {
    if (s == in.chars.size()) return leaf(vec, used);
    if (s + 1 == in.chars.size()) {
      // last generator: no further branching
      for (long e = 0; used + e <= degree; ++e) {
        if (e > 0)
          for (std::size_t t = 0; t < vec.size(); ++t) vec[t] *= in.chars[s][t];
        leaf(vec, used + e);
      }
      return;
    }
    for (long e = 0; used + e <= degree; ++e) {
      if (e > 0)
        for (std::size_t t = 0; t < vec.size(); ++t) vec[t] *= in.chars[s][t];
      walk(s + 1, used + e, vec);
    }
  }
};

}  // namespace

RVec enumerate_by_degree(const KernelInput& in, const RVec& x, long degree) {
  const std::size_t d = in.dim();
  RVec base(d);
  for (std::size_t t = 0; t < d; ++t) base[t] = in.lambda[t] * x[t];
  if (in.chars.empty()) {
    RVec acc(degree + 1);
    Walker{in, degree, acc}.walk(0, 0, base);
    return acc;
  }
  // split on the exponent of the first generator
  std::vector<RVec> starts(degree + 1, base);
  for (long e = 1; e <= degree; ++e) {
    starts[e] = starts[e - 1];
    for (std::size_t t = 0; t < d; ++t) starts[e][t] *= in.chars[0][t];
  }
  std::vector<RVec> partial(degree + 1, RVec(degree + 1));
#pragma omp parallel for schedule(dynamic)
  for (long e = 0; e <= degree; ++e) {
    Walker w{in, degree, partial[e]};
    w.walk(1, e, starts[e]);
  }
  RVec acc(degree + 1);
  for (const auto& p : partial)
    for (long m = 0; m <= degree; ++m) acc[m] += p[m];
  return acc;
}

}  // namespace stagecert::kernels::parallel
