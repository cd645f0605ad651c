#include "stagecert/functional.hpp"

namespace stagecert {

namespace {

void representations(const std::vector<long>& a, const std::vector<long>& xi, std::size_t i, long rem,
                     std::vector<long>& t, std::vector<std::vector<long>>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (i == 0) {
    if (rem == 0) out.push_back(t);
    return;
  }
  const long ai = a[i - 1];
  for (long ti = std::min(ai, rem / ai); ti >= 0; --ti) {
    const long r = rem - ti * ai;
    if (r > xi[i - 1]) break;
    t[i - 1] = ti;
    representations(a, xi, i - 1, r, t, out, limit);
  }
  t[i - 1] = 0;
}

}  // namespace

std::vector<std::vector<long>> lambda_representations(const GrowthSequence& a, std::size_t n, long m,
                                                      std::size_t limit) {
  std::vector<std::vector<long>> out;
  if (m < 0) return out;
  std::vector<long> as(n), xi(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    const BigInt& ai = a.at(i);
    if (!ai.fits_slong_p() || ai > (1L << 20))
      fail(ErrorKind::Resource, "a_" + std::to_string(i) + " too large for Lambda decompositions");
    as[i - 1] = ai.get_si();
    xi[i] = xi[i - 1] + as[i - 1] * as[i - 1];
  }
  if (m > xi[n]) return out;
  std::vector<long> t(n, 0);
  representations(as, xi, n, m, t, out, limit);
  return out;
}

Rational phi_gamma_formula(const GrowthSequence& a, std::size_t n, long k) {
  if (k < 1) return 0;
  const auto reps = lambda_representations(a, n, k - 1, 2);
  if (reps.empty()) return 0;
  if (reps.size() > 1)
    fail(ErrorKind::Integrity, "gamma index " + std::to_string(k) +
                                   ": k-1 has two decompositions over Lambda_" + std::to_string(n) +
                                   " (lexicographic condition fails)");
  Rational v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const long ti = reps[0][i];
    if (ti == 0) continue;
    const long ai = a.at(i + 1).get_si();
    v *= Rational::pow2(-ti * ai * ai) * (Rational(1) - Rational(ti) / Rational(ai));
  }
  return v;
}

PhiFunctional::PhiFunctional(const GrowthSequence& a, Stage s, kernels::Backend backend)
    : stage_(s), backend_(backend), gamma_(s.dim()), lazy_(std::make_shared<Lazy>()) {
  for (long k = 0; k < s.dim(); ++k) gamma_[k] = phi_gamma_formula(a, s.n, k);
}

const Rational& PhiFunctional::gamma(long k) const {
  if (k < 0 || k >= dim())
    fail(ErrorKind::Range, "gamma index " + std::to_string(k) + " outside [0, " + std::to_string(dim()) +
                               "); use the extended evaluation");
  return gamma_[k];
}

const RVec& PhiFunctional::e_coeffs() const {
  std::call_once(lazy_->once, [&] { lazy_->lambda = kernels::lambda_from_gamma(gamma_, stage_.lo, backend_); });
  return lazy_->lambda;
}

Rational PhiFunctional::gamma_extended(long l) const {
  const RVec& lambda = e_coeffs();
  Rational v;
  for (long t = 0; t < dim(); ++t)
    if (!lambda[t].is_zero()) v += lambda[t] * Rational::pow2(-stage_.coord(t) * l);
  return v;
}

Rational PhiFunctional::gamma_extended_lagrange(long l) const {
  if (l >= 0 && l < dim()) return gamma_[l];
  const long d = dim();
  std::call_once(lazy_->denom_once, [&] {
    lazy_->denom.assign(d, Rational(1));
    for (long i = 0; i < d; ++i)
      for (long m = 0; m < d; ++m)
        if (m != i) lazy_->denom[i] *= Rational::pow2(-i) - Rational::pow2(-m);
  });
  const Rational x = Rational::pow2(-l);
  Rational q = 1;
  for (long m = 0; m < d; ++m) q *= x - Rational::pow2(-m);
  Rational v;
  for (long i = 0; i < d; ++i) {
    if (gamma_[i].is_zero()) continue;
    const Rational p = Rational::pow2((i - l) * (1 + stage_.lo)) * q / ((x - Rational::pow2(-i)) * lazy_->denom[i]);
    v += p * gamma_[i];
  }
  return v;
}

Rational PhiFunctional::apply_coords(const RVec& x) const {
  if (static_cast<long>(x.size()) != dim()) fail(ErrorKind::Domain, "coordinate vector has wrong length");
  return dot(e_coeffs(), x);
}

Rational PhiFunctional::apply(const GammaVector& x) const {
  Rational v;
  for (const auto& [k, c] : x.gamma()) v += c * (k < dim() ? gamma_[k] : gamma_extended(k));
  const RVec& lambda = e_coeffs();
  for (const auto& [j, c] : x.e_part()) v += c * lambda[stage_.index(j)];
  return v;
}

Rational PhiFunctional::reconstruction_residual() const {
  const RVec& lambda = e_coeffs();
  Rational worst;
  for (long k = 0; k < dim(); ++k) {
    Rational s;
    for (long t = 0; t < dim(); ++t) s += lambda[t] * Rational::pow2(-stage_.coord(t) * k);
    worst = std::max(worst, (s - gamma_[k]).abs());
  }
  return worst;
}

std::vector<GkEntry> lemma_gk_scan(const PhiFunctional& phi, long window) {
  std::vector<GkEntry> out;
  const Stage& s = phi.stage();
  const long hi2 = s.hi * s.hi;
  for (long l = s.dim(); l < s.dim() + window; ++l) {
    GkEntry e;
    e.l = l;
    e.value = phi.gamma_extended(l);
    e.bound_exponent = Rational(-l * (1 + s.lo)) - Rational(BigInt(hi2), BigInt(3));
    // |v|^3 <= 2^(3 * exponent), both sides exact
    const Rational lhs = e.value.abs().pow(3);
    const Rational rhs = Rational::pow2(-3 * l * (1 + s.lo) - hi2);
    e.verdict = lhs <= rhs ? Verdict::Holds : Verdict::Fails;
    out.push_back(e);
  }
  return out;
}

}  // namespace stagecert
