#include "stagecert/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

namespace stagecert {

TruncatedModel::TruncatedModel(long size) : m(size) {
  if (size < 1) fail(ErrorKind::Domain, "truncated model needs m >= 1");
}

RVec TruncatedModel::diagonal() const {
  RVec d(m);
  for (long j = 1; j <= m; ++j) d[j - 1] = eigenvalue(j);
  return d;
}

namespace {

void check_index(const TruncatedModel& model, long j) {
  if (j < 1 || j > model.m) fail(ErrorKind::Range, "eigenvalue index outside 1..m");
}

std::vector<double> trapezoid(const TruncatedModel& model, long j, double r, long k) {
  const double c = std::ldexp(1.0, static_cast<int>(-j));
  std::vector<double> out(model.m, 0.0);
  for (long q = 0; q < k; ++q) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(k);
    const std::complex<double> w = r * std::polar(1.0, th);
    const std::complex<double> z = c + w;
    for (long i = 1; i <= model.m; ++i) {
      const double di = std::ldexp(1.0, static_cast<int>(-i));
      out[i - 1] += (w / (z - di)).real();
    }
  }
  for (auto& v : out) v /= static_cast<double>(k);
  return out;
}

std::string describe(const RVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

IdempotentResult spectral_idempotent(const TruncatedModel& model, long j) {
  check_index(model, j);
  IdempotentResult r;
  r.j = j;
  r.method = IdempotentMethod::PartialFractions;
  r.exact.assign(model.m, Rational());
  const Rational dj = model.eigenvalue(j);
  for (long i = 1; i <= model.m; ++i) {
    const Rational di = model.eigenvalue(i);
    Rational v = 1;
    for (long k = 1; k <= model.m; ++k)
      if (k != j) v *= (di - model.eigenvalue(k)) / (dj - model.eigenvalue(k));
    r.exact[i - 1] = v;
  }
  return r;
}

IdempotentResult spectral_idempotent_contour(const TruncatedModel& model, long j, const ContourOptions& opt) {
  check_index(model, j);
  if (opt.nodes < 1) fail(ErrorKind::Domain, "quadrature needs at least one node");
  const Rational center = model.eigenvalue(j);
  const Rational radius = opt.radius_fraction * center;
  if (radius.sign() <= 0) fail(ErrorKind::Geometry, "contour radius must be positive");
  for (long i = 1; i <= model.m; ++i) {
    if (i == j) continue;
    const Rational dist = (model.eigenvalue(i) - center).abs();
    if (dist == radius) fail(ErrorKind::Geometry, "contour passes through the eigenvalue 2^-" + std::to_string(i));
    if (dist < radius) fail(ErrorKind::Geometry, "contour encloses the eigenvalue 2^-" + std::to_string(i));
  }
  IdempotentResult r;
  r.j = j;
  r.method = IdempotentMethod::ContourQuadrature;
  r.nodes = opt.nodes;
  r.radius = radius.to_double();
  r.approx = trapezoid(model, j, r.radius, opt.nodes);
  const auto fine = trapezoid(model, j, r.radius, 2 * opt.nodes);
  for (long i = 0; i < model.m; ++i) r.error_estimate = std::max(r.error_estimate, std::abs(r.approx[i] - fine[i]));
  return r;
}

Rational approximate_point_spectrum_probe(const TruncatedModel& model, const Rational& lambda) {
  Rational best;
  for (long j = 1; j <= model.m; ++j) {
    const Rational dist = (model.eigenvalue(j) - lambda).abs();
    if (dist.is_zero()) fail(ErrorKind::Domain, "lambda = " + lambda.str() + " lies in the spectrum");
    if (j == 1 || dist < best) best = dist;
  }
  return best;
}

RVec generation_polynomial(const TruncatedModel& model, long j) {
  check_index(model, j);
  // t * prod_{i != j} (t - 2^-i) / (2^-j - 2^-i) / 2^-j
  RVec poly(model.m + 1);
  poly[1] = 1;
  long deg = 1;
  Rational denom = model.eigenvalue(j);
  for (long i = 1; i <= model.m; ++i) {
    if (i == j) continue;
    const Rational ri = model.eigenvalue(i);
    ++deg;
    for (long k = deg; k >= 1; --k) poly[k] = poly[k - 1] - ri * poly[k];
    poly[0] = -ri * poly[0];
    denom *= model.eigenvalue(j) - ri;
  }
  RVec out(model.m);
  for (long k = 1; k <= model.m; ++k) out[k - 1] = poly[k] / denom;
  return out;
}

bool SpectralReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

SpectralReport verify_lemma2(long m, long contour_j, const ContourOptions& opt) {
  const TruncatedModel model(m);
  SpectralReport rep;
  rep.m = m;
  std::vector<RVec> idem;
  bool unit = true;
  for (long j = 1; j <= m; ++j) {
    idem.push_back(spectral_idempotent(model, j).exact);
    for (long i = 1; i <= m; ++i)
      if (idem.back()[i - 1] != Rational(i == j ? 1 : 0)) unit = false;
  }
  rep.checks.push_back({"idempotents", "partial-fraction idempotent for 2^-j equals e_j, all j <= m", unit, ""});

  RVec sum(m);
  for (const auto& e : idem)
    for (long i = 0; i < m; ++i) sum[i] += e[i];
  bool identity = true;
  for (const auto& v : sum)
    if (v != 1) identity = false;
  rep.checks.push_back({"sum", "sum of the idempotents is the identity of the model", identity, describe(sum)});

  bool orth = true;
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b)
      for (long i = 0; i < m; ++i) {
        const Rational p = idem[a][i] * idem[b][i];
        if (p != (a == b ? idem[a][i] : Rational(0))) orth = false;
      }
  rep.checks.push_back({"orthogonal", "E_a E_b = delta_ab E_a", orth, ""});

  bool shift = true;
  for (long j = 1; j <= m; ++j)
    if (!(make_e(j).scaled(Rational::pow2(j)) * make_g() == make_e(j))) shift = false;
  rep.checks.push_back({"shift", "e_j = 2^j g e_j", shift, ""});

  bool gen = true;
  for (long j = 1; j <= m; ++j) {
    const RVec c = generation_polynomial(model, j);
    std::map<long, Rational> poly;
    for (long k = 1; k <= m; ++k) poly[k] = c[k - 1];
    const AlgebraElement q(poly, {});
    for (long i = 1; i <= m; ++i)
      if (q.coord(i) != Rational(i == j ? 1 : 0)) gen = false;
  }
  rep.checks.push_back({"generation", "each e_j on the model is a polynomial in g without constant term", gen, ""});

  const IdempotentResult c = spectral_idempotent_contour(model, contour_j, opt);
  double err = 0;
  for (long i = 1; i <= m; ++i) err = std::max(err, std::abs(c.approx[i - 1] - (i == contour_j ? 1.0 : 0.0)));
  std::ostringstream os;
  os << "K=" << c.nodes << " r=" << c.radius << " sup-error=" << err << " doubled-K estimate=" << c.error_estimate;
  rep.checks.push_back({"contour", "contour quadrature recovers e_j within 1e-12", err < 1e-12, os.str()});
  return rep;
}

MirkilAlgebra::MirkilAlgebra(long size) : N(size) {
  if (size < 1) fail(ErrorKind::Domain, "Mirkil truncation needs N >= 1");
}

RVec MirkilAlgebra::multiply(const RVec& x, const RVec& y) const {
  RVec z(N);
  for (long n = 1; n <= N; ++n) z[n - 1] = Rational::pow2(-n) * x[n - 1] * y[n - 1];
  return z;
}

RVec MirkilAlgebra::unit_vector(long n, const Rational& c) const {
  RVec v(N);
  v[n - 1] = c;
  return v;
}

bool MirkilReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

MirkilReport mirkil_verify(long N, unsigned long seed, long random_triples) {
  const MirkilAlgebra alg(N);
  MirkilReport rep;
  rep.N = N;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  auto random_vec = [&] {
    RVec v(N);
    for (auto& x : v) x = Rational(BigInt(num(rng)), BigInt(den(rng)));
    return v;
  };
  bool assoc = true, comm = true, mult = true;
  for (long t = 0; t < random_triples; ++t) {
    const RVec x = random_vec(), y = random_vec(), z = random_vec();
    if (alg.multiply(alg.multiply(x, y), z) != alg.multiply(x, alg.multiply(y, z))) assoc = false;
    if (alg.multiply(x, y) != alg.multiply(y, x)) comm = false;
    const RVec xy = alg.multiply(x, y);
    for (long n = 1; n <= N; ++n) {
      const Rational w = Rational::pow2(-n);
      if (w * xy[n - 1] != (w * x[n - 1]) * (w * y[n - 1])) mult = false;
    }
  }
  rep.checks.push_back({"associative", "weighted product is associative on random triples", assoc, ""});
  rep.checks.push_back({"commutative", "weighted product is commutative on random pairs", comm, ""});
  rep.checks.push_back({"character", "chi_n(x) = 2^-n x_n is multiplicative", mult, ""});

  bool idem = true, eig = true, chi = true;
  const RVec T = alg.generator();
  for (long n = 1; n <= N; ++n) {
    const RVec p = alg.unit_vector(n, Rational::pow2(n));
    if (alg.multiply(p, p) != p) idem = false;
    const RVec en = alg.unit_vector(n);
    if (alg.multiply(T, en) != alg.unit_vector(n, Rational::pow2(-n))) eig = false;
    if (Rational::pow2(-n) * T[n - 1] != Rational::pow2(-n)) chi = false;
  }
  rep.checks.push_back({"idempotent", "2^n e_n is idempotent for n <= N", idem, ""});
  rep.checks.push_back({"eigen", "T e_n = 2^-n e_n for n <= N", eig, ""});
  rep.checks.push_back({"chi_T", "chi_n(T) = 2^-n for n <= N", chi, ""});

  RVec power = T;
  for (long k = 1; k <= std::min<long>(N - 1, 8); ++k) {
    Rational sup;
    for (long j = k + 1; j <= N; ++j) sup = std::max(sup, power[j - 1].abs());
    rep.residuals.emplace_back(k, sup);
    power = alg.multiply(power, T);
  }
  return rep;
}

}  // namespace stagecert
