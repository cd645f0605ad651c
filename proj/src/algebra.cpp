#include "stagecert/algebra.hpp"

#include <sstream>

namespace stagecert {

namespace {

void prune_map(std::map<long, Rational>& m) {
  for (auto it = m.begin(); it != m.end();)
    it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

// sum c_m 2^(-j m)
Rational eval_dyadic(const std::map<long, Rational>& coeffs, long j) {
  Rational s;
  for (const auto& [m, c] : coeffs) s += c * Rational::pow2(-j * m);
  return s;
}

}  // namespace

// ---------------------------------------------------------------- AlgebraElement

AlgebraElement::AlgebraElement(std::map<long, Rational> poly, std::map<long, Rational> correction)
    : poly_(std::move(poly)), corr_(std::move(correction)) {
  for (const auto& [m, c] : poly_)
    if (m < 1) fail(ErrorKind::Domain, "polynomial part must have degree >= 1 terms only");
  for (const auto& [j, c] : corr_)
    if (j < 1) fail(ErrorKind::Domain, "correction index must be >= 1");
  prune();
}

void AlgebraElement::prune() {
  prune_map(poly_);
  prune_map(corr_);
}

AlgebraElement AlgebraElement::scalar_g(const Rational& c, long power) {
  if (power < 1) fail(ErrorKind::Domain, "g power must be >= 1");
  return AlgebraElement({{power, c}}, {});
}

Rational AlgebraElement::poly_at(long j) const { return eval_dyadic(poly_, j); }

Rational AlgebraElement::coord(long j) const {
  Rational v = poly_at(j);
  if (auto it = corr_.find(j); it != corr_.end()) v += it->second;
  return v;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (const auto& [m, c] : o.poly_) r.poly_[m] += c;
  for (const auto& [j, c] : o.corr_) r.corr_[j] += c;
  r.prune();
  return r;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(-1); }
AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
  AlgebraElement r = *this;
  for (auto& [m, v] : r.poly_) v *= c;
  for (auto& [j, v] : r.corr_) v *= c;
  r.prune();
  return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  AlgebraElement r;
  for (const auto& [m, c] : poly_)
    for (const auto& [k, d] : o.poly_) r.poly_[m + k] += c * d;
  // (p_j + c_j)(q_j + d_j) - p_j q_j
  std::map<long, Rational> idx;
  for (const auto& [j, c] : corr_) idx[j];
  for (const auto& [j, c] : o.corr_) idx[j];
  for (const auto& [j, unused] : idx) {
    const auto ci = corr_.find(j);
    const auto di = o.corr_.find(j);
    const Rational c = ci == corr_.end() ? Rational() : ci->second;
    const Rational d = di == o.corr_.end() ? Rational() : di->second;
    Rational v = c * d;
    if (!c.is_zero()) v += c * o.poly_at(j);
    if (!d.is_zero()) v += d * poly_at(j);
    r.corr_[j] = v;
  }
  r.prune();
  return r;
}

AlgebraElement AlgebraElement::pow(long k) const {
  if (k < 1) fail(ErrorKind::Domain, "A_0 has no unit; powers start at 1");
  AlgebraElement result = *this, base = *this;
  --k;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::string AlgebraElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : poly_) {
    os << (first ? "" : " + ") << "(" << c << ")g^" << m;
    first = false;
  }
  for (const auto& [j, c] : corr_) {
    os << (first ? "" : " + ") << "(" << c << ")e" << j;
    first = false;
  }
  return first ? "0" : os.str();
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) { return x * y; }

AlgebraElement make_g() { return AlgebraElement::scalar_g(1, 1); }

AlgebraElement make_e(long i) {
  if (i < 1) fail(ErrorKind::Domain, "e_i needs i >= 1");
  return AlgebraElement({}, {{i, Rational(1)}});
}

AlgebraElement make_gn(long n) {
  if (n < 0) fail(ErrorKind::Domain, "g_n needs n >= 0");
  std::map<long, Rational> corr;
  for (long i = 1; i < n; ++i) corr[i] = Rational(1) - Rational::pow2(n - i);
  return AlgebraElement({{1, Rational::pow2(n)}}, corr);
}

AlgebraElement make_Pn(long n) {
  std::map<long, Rational> corr;
  for (long i = 1; i <= n; ++i) corr[i] = 1;
  return AlgebraElement({}, corr);
}

// ---------------------------------------------------------------- c0 norm

Rational c0_norm_on(const AlgebraElement& x, long lo, long hi) {
  Rational best;
  for (long j = lo + 1; j <= hi; ++j) best = std::max(best, x.coord(j).abs());
  return best;
}

CertifiedScalar c0_norm(const AlgebraElement& x, long window_cap) {
  if (x.is_zero()) return CertifiedScalar(0);
  std::map<long, Rational> abs_poly;
  for (const auto& [m, c] : x.poly()) abs_poly[m] = c.abs();
  Rational best;
  long j = 1;
  const long end = x.support_end();
  while (true) {
    best = std::max(best, x.coord(j).abs());
    ++j;
    if (j > end) {
      const Rational tail = eval_dyadic(abs_poly, j);  // bounds |x_j'| for all j' >= j
      if (tail <= best) return CertifiedScalar(best);
      if (j > window_cap) return CertifiedScalar::enclosure(best, tail);
    }
  }
}

// ---------------------------------------------------------------- stages

Stage make_stage(const GrowthSequence& a, std::size_t n, long dimension_cap) {
  if (n < 1) fail(ErrorKind::Range, "stages start at n = 1 (stage 0 is the c0 norm)");
  if (!a.stage_buildable(n))
    fail(ErrorKind::Unavailable, "stage " + std::to_string(n) + " needs a_" + std::to_string(n + 1));
  const BigInt d = a.stage_dimension(n);
  if (d > dimension_cap)
    fail(ErrorKind::Resource, "stage " + std::to_string(n) + " has dimension " + d.get_str() +
                                  " above the cap " + std::to_string(dimension_cap));
  Stage s;
  s.n = n;
  s.lo = a.at(n).get_si();
  s.hi = a.at(n + 1).get_si();
  return s;
}

GammaVector::GammaVector(Stage s, std::map<long, Rational> gamma, std::map<long, Rational> e_part)
    : stage_(s), gamma_(std::move(gamma)), e_(std::move(e_part)) {
  for (const auto& [k, c] : gamma_)
    if (k < 0) fail(ErrorKind::Domain, "gamma index must be >= 0");
  for (const auto& [j, c] : e_)
    if (!stage_.contains(j)) fail(ErrorKind::Range, "e-part index outside the stage block");
  prune();
}

void GammaVector::prune() {
  prune_map(gamma_);
  prune_map(e_);
}

GammaVector GammaVector::gamma_k(Stage s, long k, const Rational& c) { return GammaVector(s, {{k, c}}); }

GammaVector GammaVector::e(Stage s, long j, const Rational& c) { return GammaVector(s, {}, {{j, c}}); }

GammaVector GammaVector::from_coords(Stage s, const RVec& x) {
  if (static_cast<long>(x.size()) != s.dim()) fail(ErrorKind::Domain, "coordinate vector has wrong length");
  std::map<long, Rational> e;
  for (long t = 0; t < s.dim(); ++t) e[s.coord(t)] = x[t];
  return GammaVector(s, {}, e);
}

Rational GammaVector::coord(long j) const {
  Rational v = eval_dyadic(gamma_, j);
  if (auto it = e_.find(j); it != e_.end()) v += it->second;
  return v;
}

RVec GammaVector::coords() const {
  RVec x(stage_.dim());
  for (long t = 0; t < stage_.dim(); ++t) x[t] = coord(stage_.coord(t));
  return x;
}

GammaVector GammaVector::operator+(const GammaVector& o) const {
  GammaVector r = *this;
  for (const auto& [k, c] : o.gamma_) r.gamma_[k] += c;
  for (const auto& [j, c] : o.e_) r.e_[j] += c;
  r.prune();
  return r;
}

GammaVector GammaVector::operator-(const GammaVector& o) const { return *this + o.scaled(-1); }

GammaVector GammaVector::scaled(const Rational& c) const {
  GammaVector r = *this;
  for (auto& [k, v] : r.gamma_) v *= c;
  for (auto& [j, v] : r.e_) v *= c;
  r.prune();
  return r;
}

GammaVector GammaVector::operator*(const GammaVector& o) const {
  GammaVector r(stage_);
  for (const auto& [k, c] : gamma_)
    for (const auto& [i, d] : o.gamma_) r.gamma_[k + i] += c * d;
  std::map<long, bool> idx;
  for (const auto& [j, c] : e_) idx[j] = true;
  for (const auto& [j, c] : o.e_) idx[j] = true;
  for (const auto& [j, unused] : idx) {
    const auto ci = e_.find(j);
    const auto di = o.e_.find(j);
    const Rational c = ci == e_.end() ? Rational() : ci->second;
    const Rational d = di == o.e_.end() ? Rational() : di->second;
    Rational v = c * d;
    if (!c.is_zero()) v += c * eval_dyadic(o.gamma_, j);
    if (!d.is_zero()) v += d * eval_dyadic(gamma_, j);
    r.e_[j] = v;
  }
  r.prune();
  return r;
}

GammaVector GammaVector::pow(long k) const {
  if (k < 0) fail(ErrorKind::Domain, "negative power");
  GammaVector result = GammaVector::gamma_k(stage_, 0);
  GammaVector base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::map<long, Rational> interpolate_gamma(const Stage& s, const RVec& x) {
  // Newton form on nodes t_j = 2^-j, then expanded to monomials t^k
  const long d = s.dim();
  if (static_cast<long>(x.size()) != d) fail(ErrorKind::Domain, "coordinate vector has wrong length");
  RVec nodes(d), dd = x;
  for (long t = 0; t < d; ++t) nodes[t] = Rational::pow2(-s.coord(t));
  for (long k = 1; k < d; ++k)
    for (long t = d - 1; t >= k; --t) dd[t] = (dd[t] - dd[t - 1]) / (nodes[t] - nodes[t - k]);
  RVec poly(d);
  for (long k = d - 1; k >= 0; --k) {
    // poly = poly * (t - nodes[k]) + dd[k]
    for (long m = d - 1; m >= 1; --m) poly[m] = poly[m - 1] - nodes[k] * poly[m];
    poly[0] = dd[k] - nodes[k] * poly[0];
  }
  std::map<long, Rational> out;
  for (long k = 0; k < d; ++k)
    if (!poly[k].is_zero()) out[k] = poly[k];
  return out;
}

GammaVector compress(const AlgebraElement& x, const Stage& s) {
  std::map<long, Rational> e;
  for (const auto& [j, c] : x.correction())
    if (s.contains(j)) e[j] = c;
  GammaVector raw(s, x.poly(), e);
  if (raw.e_part().empty() || s.dim() > kCanonicalDimension) return raw;
  auto canon = interpolate_gamma(s, raw.coords());
  if (canon.size() < raw.gamma().size() + raw.e_part().size()) return GammaVector(s, std::move(canon));
  return raw;
}

// ---------------------------------------------------------------- generators

GeneratorSet make_generators(const GrowthSequence& a, const Stage& s) {
  GeneratorSet g;
  g.stage = s;
  g.names.push_back("gamma1");
  g.non_e.push_back(GammaVector::gamma_k(s, 1));
  for (std::size_t i = 1; i <= s.n; ++i) {
    const long ai = a.at(i).get_si();
    const long ii = static_cast<long>(i);
    const Rational big = Rational::pow2(ai * ai);
    g.names.push_back("u" + std::to_string(i));
    g.non_e.push_back(GammaVector::gamma_k(s, ai, Rational(BigInt(ii), BigInt(ii + 1)) * big));
  }
  for (std::size_t i = 1; i <= s.n; ++i) {
    const long ai = a.at(i).get_si();
    const long ii = static_cast<long>(i);
    const Rational big = Rational::pow2(ai * ai);
    g.names.push_back("v" + std::to_string(i));
    g.non_e.push_back(GammaVector(s, {{1 + ai, Rational(ii) * big}, {1, Rational(-ii)}}));
  }
  g.characters.reserve(g.non_e.size());
  for (const auto& v : g.non_e) g.characters.push_back(v.coords());
  bool ok = true;
  RVec w(s.dim());
  for (long t = 0; t < s.dim() && ok; ++t) {
    const auto ai = a.weight(BigInt(s.coord(t)));
    if (!ai) {
      ok = false;
      break;
    }
    w[t] = Rational(BigInt(1), *ai);
  }
  if (ok) g.e_weight = std::move(w);
  return g;
}

std::vector<AlgebraElement> s0_elements(const GrowthSequence& a, std::size_t k_max) {
  std::vector<AlgebraElement> out{make_g()};
  for (std::size_t k = 1; k <= k_max; ++k) {
    const long ak = a.at(k).get_si();
    const long kk = static_cast<long>(k);
    const AlgebraElement x = make_gn(ak).pow(ak);
    out.push_back(make_e(kk).scaled(Rational(BigInt(1), a.at(k))));
    out.push_back(x.scaled(Rational(BigInt(kk), BigInt(kk + 1))));
    out.push_back((x * make_g() - make_g()).scaled(kk));
    const AlgebraElement tail = make_g().pow(ak) - make_g().pow(ak) * make_Pn(ak);
    out.push_back(tail.scaled(Rational(kk).pow(ak)));
  }
  return out;
}

}  // namespace stagecert
