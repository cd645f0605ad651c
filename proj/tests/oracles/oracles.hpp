#pragma once

// Reference computations built straight from the definitions. They share only the Rational type
// with the library.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "stagecert/numeric.hpp"

namespace oracle {

using stagecert::BigInt;
using stagecert::Rational;
using Vec = std::vector<Rational>;

inline Rational p2(long k) { return Rational::pow2(k); }

/// a_i with a_0 = 1 and a linear tail past the explicit entries
inline BigInt entry(const std::vector<long>& a, long i) {
  if (i == 0) return 1;
  const long m = static_cast<long>(a.size());
  if (i <= m) return a[i - 1];
  return BigInt(a.back()) + (i - m);
}

/// phi_n(gamma_k) by enumerating every tuple 0 <= t_i <= a_i, i <= n
inline std::map<long, Rational> phi_table(const std::vector<long>& a, long n) {
  std::map<long, Rational> out;
  std::vector<long> t(n, 0);
  while (true) {
    long k = 1;
    Rational v = 1;
    for (long i = 0; i < n; ++i) {
      k += t[i] * a[i];
      v *= p2(-t[i] * a[i] * a[i]) * (Rational(1) - Rational(BigInt(t[i]), BigInt(a[i])));
    }
    out[k] = v;
    long i = 0;
    while (i < n && ++t[i] > a[i]) t[i++] = 0;
    if (i == n) break;
  }
  return out;
}

inline Rational phi_value(const std::map<long, Rational>& table, long k) {
  auto it = table.find(k);
  return it == table.end() ? Rational(0) : it->second;
}

/// Gauss-Jordan on an exact square system
inline Vec solve(std::vector<Vec> m, Vec rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (m[p][c].is_zero()) ++p;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    const Rational inv = m[c][c].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Rational f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) rhs[r] /= m[r][r];
  return rhs;
}

/// lambda_j for j = lo+1..hi from sum_j lambda_j 2^-jk = phi(gamma_k), k < hi - lo
inline Vec lambda_by_vandermonde(long lo, long hi, const std::map<long, Rational>& table) {
  const long d = hi - lo;
  std::vector<Vec> m(d, Vec(d));
  Vec rhs(d);
  for (long k = 0; k < d; ++k) {
    for (long t = 0; t < d; ++t) m[k][t] = p2(-(lo + 1 + t) * k);
    rhs[k] = phi_value(table, k);
  }
  return solve(m, rhs);
}

/// chi_j of the non-e generators gamma1, u_i, v_i (i <= n), j = lo+1..hi
inline std::vector<Vec> generator_characters(const std::vector<long>& a, long n, long lo, long hi) {
  std::vector<Vec> out;
  auto row = [&](const std::function<Rational(long)>& f) {
    Vec v;
    for (long j = lo + 1; j <= hi; ++j) v.push_back(f(j));
    out.push_back(v);
  };
  row([](long j) { return p2(-j); });
  for (long i = 1; i <= n; ++i) {
    const long ai = a[i - 1];
    row([=](long j) { return Rational(BigInt(i), BigInt(i + 1)) * p2(ai * ai - j * ai); });
    row([=](long j) { return Rational(i) * (p2(ai * ai - j * (1 + ai)) - p2(-j)); });
  }
  return out;
}

/// sum_{m >= 1} a_j^-2m = 1/(a_j^2 - 1)
inline Vec e_tail(const std::vector<long>& a, long lo, long hi) {
  Vec v;
  for (long j = lo + 1; j <= hi; ++j) {
    const BigInt aj = entry(a, j);
    v.push_back(Rational(BigInt(1), aj * aj - 1));
  }
  return v;
}

/// Per-degree sums of |phi(s^i x)|^2 over index functions i of the non-e generators, with every
/// e-exponent summed in closed form. Monomials are formed coordinate-wise.
inline Vec enumerate(const std::vector<Vec>& chars, const Vec& lambda, const Vec& tail, const Vec& x, long degree) {
  const std::size_t d = x.size();
  Vec base(d);
  for (std::size_t t = 0; t < d; ++t) base[t] = lambda[t] * x[t];
  Vec per(degree + 1);
  std::function<void(std::size_t, long, const Vec&)> walk = [&](std::size_t first, long deg, const Vec& y) {
    Rational phi;
    Rational e;
    for (std::size_t t = 0; t < d; ++t) {
      phi += y[t];
      e += tail[t] * y[t] * y[t];
    }
    per[deg] += phi * phi + e;
    if (deg == degree) return;
    for (std::size_t s = first; s < chars.size(); ++s) {
      Vec z(d);
      for (std::size_t t = 0; t < d; ++t) z[t] = y[t] * chars[s][t];
      walk(s, deg + 1, z);
    }
  };
  walk(0, 0, base);
  Vec partial(degree + 1);
  Rational run;
  for (long k = 0; k <= degree; ++k) partial[k] = run += per[k];
  return partial;
}

/// Brute-force lexicographic check over |t_i| <= 2 a_i; returns the first violating tuple
inline std::vector<long> lex_violation(const std::vector<long>& a) {
  const std::size_t n = a.size();
  std::vector<long> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = -2 * a[i];
  while (true) {
    long r = -1;
    BigInt s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s += BigInt(t[i]) * a[i];
      if (t[i] != 0) r = static_cast<long>(i);
    }
    if (r >= 0 && sgn(s) != (t[r] > 0 ? 1 : -1)) return t;
    std::size_t i = 0;
    while (i < n && ++t[i] > 2 * a[i]) t[i] = -2 * a[i], ++i;
    if (i == n) return {};
  }
}

/// a_k^2 > 1 + 2^(2 + a_{k-1}^2) with plain big integers
inline bool tower_holds(const BigInt& prev, const BigInt& cur) {
  BigInt rhs = 1;
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 2 + prev.get_ui() * prev.get_ui());
  return cur * cur > rhs + 1;
}

inline Vec random_vector(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  Vec v(d);
  for (auto& x : v) x = Rational(BigInt(num(rng)), BigInt(den(rng)));
  return v;
}

}  // namespace oracle
