#include "stagecert/linalg.hpp"

namespace stagecert {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::Domain, "matrix shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

RVec RationalMatrix::operator*(const RVec& x) const {
  if (cols_ != x.size()) fail(ErrorKind::Domain, "matrix-vector shape mismatch");
  RVec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    RVec terms;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!x[j].is_zero() && !(*this)(i, j).is_zero()) terms.push_back((*this)(i, j) * x[j]);
    y[i] = balanced_sum(std::move(terms));
  }
  return y;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Rational balanced_sum(RVec terms) {
  if (terms.empty()) return Rational();
  while (terms.size() > 1) {
    const std::size_t half = terms.size() / 2;
    for (std::size_t i = 0; i < half; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (terms.size() % 2) terms[half] = terms.back();
    terms.resize((terms.size() + 1) / 2);
  }
  return terms[0];
}

Rational dot(const RVec& x, const RVec& y) {
  if (x.size() != y.size()) fail(ErrorKind::Domain, "vector length mismatch");
  RVec terms;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero() && !y[i].is_zero()) terms.push_back(x[i] * y[i]);
  return balanced_sum(std::move(terms));
}

Rational bilinear(const RationalMatrix& m, const RVec& x, const RVec& y) { return dot(x, m * y); }

namespace {

// Common-denominator scaling: m = a / l with a integral, l > 0.
std::vector<BigInt> integerize(const RationalMatrix& m, BigInt& l) {
  const std::size_t n = m.rows();
  l = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const BigInt den = m(i, j).den();
      if (den != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
  std::vector<BigInt> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Rational& v = m(i, j);
      if (v.is_zero()) continue;
      BigInt x = l / v.den();
      x *= v.num();
      a[i * n + j] = x;
      a[j * n + i] = std::move(x);
    }
  return a;
}

// One fraction-free step on the symmetric integer matrix a: for i, j not yet used,
// a_ij <- (a_pp a_ij - a_ip a_pj) / prev, the division being exact.
void bareiss_step(std::vector<BigInt>& a, std::size_t n, const std::vector<bool>& used, std::size_t p,
                  const BigInt& prev) {
  const BigInt piv = a[p * n + p];
  BigInt t;
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    const BigInt ip = a[i * n + p];
    for (std::size_t j = i; j < n; ++j) {
      if (used[j]) continue;
      BigInt& v = a[i * n + j];
      v *= piv;
      if (sgn(ip) != 0 && sgn(a[j * n + p]) != 0) {
        t = ip * a[j * n + p];
        v -= t;
      }
      if (prev != 1) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      if (j != i) a[j * n + i] = v;
    }
  }
}

}  // namespace

PivotedLdl pivoted_ldl(const RationalMatrix& m) {
  if (!m.is_symmetric()) fail(ErrorKind::Domain, "pivoted LDL of a non-symmetric matrix");
  const std::size_t n = m.rows();
  // Schur complement after k steps is a / prev
  BigInt scale;
  std::vector<BigInt> a = integerize(m, scale);
  BigInt prev = 1;
  std::vector<bool> used(n, false);
  std::vector<RVec> rows;
  PivotedLdl out;
  auto at = [&](std::size_t i, std::size_t j) -> const BigInt& { return a[i * n + j]; };
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> p;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && (!p || at(i, i) > at(*p, *p))) p = i;
    if (!p) break;
    if (sgn(at(*p, *p)) <= 0) {
      // remaining Schur complement must vanish for a PSD matrix
      for (std::size_t i = 0; i < n && out.psd; ++i) {
        if (used[i]) continue;
        if (sgn(at(i, i)) < 0) {
          out.psd = false;
          out.negative_witness.assign(n, Rational());
          out.negative_witness[i] = 1;
          break;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (used[j] || sgn(at(i, j)) == 0) continue;
          out.psd = false;
          // both diagonals vanish here, so e_i - sign(s_ij) e_j is negative
          out.negative_witness.assign(n, Rational());
          out.negative_witness[i] = 1;
          out.negative_witness[j] = -sgn(at(i, j));
          break;
        }
      }
      break;
    }
    RVec f(n);
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && sgn(at(j, *p)) != 0) f[j] = Rational(at(j, *p), at(*p, *p));
    out.pivots.push_back(*p);
    out.delta.push_back(Rational(at(*p, *p), prev * scale));
    rows.push_back(std::move(f));
    used[*p] = true;
    bareiss_step(a, n, used, *p, prev);
    prev = at(*p, *p);
  }
  if (!out.psd) {
    // the witness above lives in Schur-complement coordinates; map it back
    RVec& x = out.negative_witness;
    for (std::size_t k = rows.size(); k-- > 0;) {
      Rational t;
      for (std::size_t j = 0; j < n; ++j)
        if (j != out.pivots[k] && !rows[k][j].is_zero() && !x[j].is_zero()) t += rows[k][j] * x[j];
      x[out.pivots[k]] = -t;
    }
  }
  out.factor = RationalMatrix(rows.size(), n);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) out.factor(k, j) = rows[k][j];
  return out;
}

bool is_positive_semidefinite(const RationalMatrix& m) {
  if (!m.is_symmetric()) fail(ErrorKind::Domain, "PSD test of a non-symmetric matrix");
  const std::size_t n = m.rows();
  BigInt scale;
  std::vector<BigInt> a = integerize(m, scale);
  BigInt prev = 1;
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> p;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && (!p || a[i * n + i] > a[*p * n + *p])) p = i;
    if (sgn(a[*p * n + *p]) <= 0) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!used[i] && !used[j] && sgn(a[i * n + j]) != 0) return false;
      return true;
    }
    used[*p] = true;
    bareiss_step(a, n, used, *p, prev);
    prev = a[*p * n + *p];
  }
  return true;
}

DefinitenessTest positive_definite_test(const RationalMatrix& m) {
  if (!m.is_symmetric()) fail(ErrorKind::Domain, "definiteness test of a non-symmetric matrix");
  const std::size_t n = m.rows();
  BigInt scale;
  std::vector<BigInt> a = integerize(m, scale);
  BigInt prev = 1;
  std::vector<bool> used(n, false);
  DefinitenessTest out;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k * n + k]) <= 0) {
      out.positive_definite = false;
      out.failing_index = k;
      out.failing_pivot = Rational(a[k * n + k], prev) / Rational(scale);
      // rows 0..k-1 of a still hold their elimination rows; back substitute with x_k = 1
      RVec x(n);
      x[k] = 1;
      for (std::size_t i = k; i-- > 0;) {
        Rational s;
        for (std::size_t j = i + 1; j <= k; ++j)
          if (sgn(a[i * n + j]) != 0 && !x[j].is_zero()) s += Rational(a[i * n + j]) * x[j];
        x[i] = -s / Rational(a[i * n + i]);
      }
      out.witness = std::move(x);
      return out;
    }
    used[k] = true;
    bareiss_step(a, n, used, k, prev);
    prev = a[k * n + k];
  }
  return out;
}

}  // namespace stagecert
