#include "stagecert/kernels.hpp"

namespace stagecert::kernels::serial {

std::vector<RVec> lagrange_coefficients(long lo, long d) {
  std::vector<RVec> out(d, RVec(d));
  for (long i = 0; i < d; ++i) {
    const Rational ri = Rational::pow2(-i);
    RVec poly(d);
    poly[0] = 1;
    long deg = 0;
    Rational denom = 1;
    for (long m = 0; m < d; ++m) {
      if (m == i) continue;
      const Rational rm = Rational::pow2(-m);
      // poly *= (t - rm)
      ++deg;
      for (long k = deg; k >= 1; --k) poly[k] = poly[k - 1] - rm * poly[k];
      poly[0] = -rm * poly[0];
      denom *= ri - rm;
    }
    const Rational scale = Rational::pow2(i * (1 + lo)) / denom;
    for (long t = 0; t < d; ++t) out[i][t] = scale * poly[t];
  }
  return out;
}

namespace {

Rational kernel_entry(const KernelInput& in, std::size_t j, std::size_t k) {
  Rational v = in.lambda[j] * in.lambda[k];
  if (v.is_zero()) return v;
  for (const auto& c : in.chars) v /= Rational(1) - c[j] * c[k];
  if (j == k && !in.e_diag.empty()) v *= in.e_diag[j];
  return v;
}

Rational truncated_entry(const KernelInput& in, std::size_t j, std::size_t k, long degree) {
  Rational v = in.lambda[j] * in.lambda[k];
  if (v.is_zero()) return v;
  RVec h(degree + 1);
  h[0] = 1;
  for (const auto& c : in.chars) {
    const Rational w = c[j] * c[k];
    for (long m = 1; m <= degree; ++m) h[m] += w * h[m - 1];
  }
  Rational total;
  for (const auto& x : h) total += x;
  v *= total;
  if (j == k && !in.e_diag.empty()) v *= in.e_diag[j];
  return v;
}

void dfs(const KernelInput& in, std::size_t s, long used, long degree, RVec vec, RVec& acc) {
  if (s == in.chars.size()) {
    Rational lin, extra;
    for (std::size_t t = 0; t < vec.size(); ++t) {
      lin += vec[t];
      if (!in.e_diag.empty()) extra += (in.e_diag[t] - 1) * vec[t] * vec[t];
    }
    acc[used] += lin * lin + extra;
    return;
  }
  for (long e = 0; used + e <= degree; ++e) {
    if (e > 0)
      for (std::size_t t = 0; t < vec.size(); ++t) vec[t] *= in.chars[s][t];
    dfs(in, s + 1, used + e, degree, vec, acc);
  }
}

}  // namespace

RationalMatrix gram(const KernelInput& in) {
  const std::size_t d = in.dim();
  RationalMatrix g(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j; k < d; ++k) g(j, k) = g(k, j) = kernel_entry(in, j, k);
  return g;
}

RationalMatrix gram_truncated(const KernelInput& in, long degree) {
  const std::size_t d = in.dim();
  RationalMatrix g(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j; k < d; ++k) g(j, k) = g(k, j) = truncated_entry(in, j, k, degree);
  return g;
}

RVec enumerate_by_degree(const KernelInput& in, const RVec& x, long degree) {
  RVec vec(in.dim());
  for (std::size_t t = 0; t < vec.size(); ++t) vec[t] = in.lambda[t] * x[t];
  RVec acc(degree + 1);
  dfs(in, 0, 0, degree, vec, acc);
  return acc;
}

}  // namespace stagecert::kernels::serial
