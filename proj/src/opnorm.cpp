#include "stagecert/opnorm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace stagecert {

ScaledGram scale_gram(const GramModel& m) {
  ScaledGram out;
  const auto& in = m.input;
  for (std::size_t t = 0; t < in.dim(); ++t)
    if (!in.lambda[t].is_zero()) out.support.push_back(t);
  kernels::KernelInput unit;
  unit.lambda.assign(out.support.size(), Rational(1));
  unit.chars.assign(in.chars.size(), RVec(out.support.size()));
  for (std::size_t k = 0; k < out.support.size(); ++k) {
    const std::size_t t = out.support[k];
    out.lambda.push_back(in.lambda[t]);
    for (std::size_t s = 0; s < in.chars.size(); ++s) unit.chars[s][k] = in.chars[s][t];
    if (!in.e_diag.empty()) unit.e_diag.push_back(in.e_diag[t]);
  }
  out.K = kernels::gram(unit, m.backend);
  const DefinitenessCertificate c = certify_positive_definite(out.K);
  if (c.result == Definiteness::NotPositive)
    fail(ErrorKind::Integrity, "kernel matrix of stage " + std::to_string(m.stage.n) + " is not positive definite");
  if (c.result == Definiteness::Unknown)
    fail(ErrorKind::Resource, "no working precision certifies the kernel matrix of stage " + std::to_string(m.stage.n));
  out.precision = c.precision;
  return out;
}

RVec stage_diagonal(const AlgebraElement& t, const Stage& s) {
  RVec d(s.dim());
  for (long i = 0; i < s.dim(); ++i) d[i] = t.coord(s.coord(i));
  return d;
}

Rational rayleigh(const GramModel& m, const RVec& diag, const RVec& x) {
  const Rational den = quadratic(m.G, x);
  if (den.sign() <= 0) fail(ErrorKind::Degenerate, "witness has zero seminorm");
  RVec dx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dx[i] = diag[i] * x[i];
  return quadratic(m.G, dx) / den;
}

namespace {

// The problem in w = Lambda x on the support: ratio w^T DKD w / w^T K w.
struct Scaled {
  const ScaledGram& sg;
  RVec diag;         // D on the support
  RationalMatrix B;  // DKD

  RVec lift(const RVec& w, std::size_t d) const {
    RVec x(d);
    for (std::size_t k = 0; k < w.size(); ++k) x[sg.support[k]] = w[k] / sg.lambda[k];
    return x;
  }
  RVec restrict(const RVec& x) const {
    RVec w(sg.rank());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = sg.lambda[k] * x[sg.support[k]];
    return w;
  }
  RationalMatrix shifted(const Rational& c) const {
    RationalMatrix m = sg.K;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i; j < m.cols(); ++j) m(i, j) = m(j, i) = c * sg.K(i, j) - B(i, j);
    return m;
  }
};

bool all_zero(const RVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

NormEnclosure op_norm(const GramModel& m, const ScaledGram& sg, const RVec& diag, const OpNormOptions& opt) {
  const std::size_t r = sg.rank(), d = m.G.rows();
  if (r == 0) fail(ErrorKind::Degenerate, "stage seminorm vanishes identically (all lambda_j = 0)");
  if (diag.size() != d) fail(ErrorKind::Domain, "diagonal has wrong length");

  Scaled sc{sg, RVec(r), RationalMatrix(r, r)};
  for (std::size_t k = 0; k < r; ++k) sc.diag[k] = diag[sg.support[k]];
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) sc.B(k, l) = sc.B(l, k) = sc.diag[k] * sg.K(k, l) * sc.diag[l];

  NormEnclosure out;
  bool uniform = true;
  for (const auto& v : sc.diag)
    if (v.abs() != sc.diag[0].abs()) uniform = false;
  if (uniform) {
    // D = +-c on the support
    RVec w(r);
    w[0] = 1;
    out.witness = sc.lift(w, d);
    out.lo_sq = out.hi_sq = sc.diag[0] * sc.diag[0];
    out.lo = out.hi = sc.diag[0].abs();
    out.exact = true;
    out.hi_method = "exact";
    return out;
  }

  long prec = sg.precision + opt.precision_bits + 64;
  bool have = false;
  auto offer = [&](const RVec& w, const RVec& x) {
    if (all_zero(w)) return;
    const RatioBounds b = ratio_bounds(sc.B, sg.K, w, prec);
    if (b.valid && (!have || b.lo > out.lo_sq)) {
      out.lo_sq = b.lo;
      out.witness = x;
      have = true;
    }
  };
  for (const auto& x : opt.witnesses)
    if (x.size() == d) offer(sc.restrict(x), x);

  const EigenEstimate est = dominant_eigenvector(sc.B, sg.K, prec);
  if (est.ok) offer(est.x, sc.lift(est.x, d));
  if (!have) {
    RVec e0(r);
    e0[0] = 1;
    offer(e0, sc.lift(e0, d));
  }
  if (!have) fail(ErrorKind::Resource, "no witness with a certified Rayleigh quotient");
  if (out.lo_sq.sign() < 0) out.lo_sq = 0;

  // certified upper bounds: c K - DKD positive definite implies ||D||^2 <= c
  bool found = false, stalled = false;
  auto test = [&](const Rational& c) {
    const DefinitenessCertificate t = certify_positive_definite(sc.shifted(c), prec);
    ++out.steps;
    if (t.result == Definiteness::Positive) {
      prec = std::max(prec, t.precision);
      return true;
    }
    if (t.result == Definiteness::NotPositive) offer(t.witness, sc.lift(t.witness, d));
    else stalled = true;
    return false;
  };
  std::vector<Rational> candidates;
  const Rational slack = (out.lo_sq + 1) * Rational::pow2(-(opt.precision_bits + 6));
  candidates.push_back(round_up(out.lo_sq + slack, opt.precision_bits + 16));
  const Rational mu = est.ok && est.mu > 0 ? Rational(mpq_class(est.mu)) : Rational(0);
  for (long k : {40L, 20L, 10L}) candidates.push_back(round_up(mu * (Rational(1) + Rational::pow2(-k)), opt.precision_bits + 16));
  for (const auto& c : candidates) {
    if (c <= out.lo_sq) continue;
    if (test(c)) {
      out.hi_sq = c;
      found = true;
      break;
    }
  }
  Rational c = std::max(Rational(1), 2 * out.lo_sq);
  while (!found && !stalled && out.steps < opt.max_steps) {
    if (test(c)) {
      out.hi_sq = c;
      found = true;
    } else {
      c = std::max(2 * c, 2 * out.lo_sq);
    }
  }
  if (!found) fail(ErrorKind::Resource, "no certified upper bound within the step cap");
  out.hi_method = "pd-certificate";
  const Rational target = Rational::pow2(-opt.precision_bits);
  while (!stalled && out.steps < opt.max_steps) {
    const Rational lo_n = sqrt_enclosure(out.lo_sq, opt.precision_bits + 8).lo();
    const Rational hi_n = sqrt_enclosure(out.hi_sq, opt.precision_bits + 8).hi();
    if (hi_n - lo_n <= target) break;
    Rational mid = round_up((out.lo_sq + out.hi_sq) / 2, opt.precision_bits + 16);
    if (!(mid > out.lo_sq && mid < out.hi_sq)) mid = (out.lo_sq + out.hi_sq) / 2;
    if (test(mid)) out.hi_sq = mid;
  }
  out.lo = sqrt_enclosure(out.lo_sq, opt.precision_bits + 8).lo();
  out.hi = sqrt_enclosure(out.hi_sq, opt.precision_bits + 8).hi();
  return out;
}

NormEnclosure op_norm(const GramModel& m, const AlgebraElement& t, const OpNormOptions& opt) {
  return op_norm(m, scale_gram(m), stage_diagonal(t, m.stage), opt);
}

const GramModel& StageCache::model(std::size_t n) {
  auto& slot = models_[n];
  if (!slot) slot = std::make_unique<GramModel>(build_gram_model(a_, n, opt_));
  return *slot;
}

const ScaledGram& StageCache::scaled(std::size_t n) {
  auto& slot = scaled_[n];
  if (!slot) slot = std::make_unique<ScaledGram>(scale_gram(model(n)));
  return *slot;
}

GlobalNorm global_norm(const AlgebraElement& t, StageCache& cache, std::size_t n_max, const OpNormOptions& opt) {
  GlobalNorm out;
  const CertifiedScalar c0 = c0_norm(t);
  out.stages.push_back({0, true, "", c0.lo(), c0.hi(), c0.is_exact()});
  out.lo = c0.lo();
  out.hi = c0.hi();
  for (std::size_t n = 1; n <= n_max; ++n) {
    StageNormRow row;
    row.n = n;
    try {
      const GramModel& m = cache.model(n);
      const NormEnclosure e = op_norm(m, cache.scaled(n), stage_diagonal(t, m.stage), opt);
      row.lo = e.lo;
      row.hi = e.hi;
      row.exact = e.exact && e.lo == e.hi;
      out.lo = std::max(out.lo, e.lo);
      out.hi = std::max(out.hi, e.hi);
      out.last_stage = n;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Unavailable && err.kind() != ErrorKind::Resource) throw;
      row.available = false;
      row.reason = err.what();
    }
    out.stages.push_back(row);
  }
  out.exact = out.lo == out.hi;
  return out;
}

namespace {

CaiEntry cai_entry(std::string name, std::string statement, const AlgebraElement& x, const Rational& target,
                   StageCache& cache, std::size_t n_max, const OpNormOptions& opt) {
  CaiEntry e;
  e.name = std::move(name);
  e.statement = std::move(statement);
  e.norm = global_norm(x, cache, n_max, opt);
  e.target = target;
  if (e.norm.hi <= target)
    e.verdict = Verdict::Holds;
  else if (e.norm.lo > target)
    e.verdict = Verdict::Fails;
  else
    e.verdict = Verdict::Undecidable;
  return e;
}

}  // namespace

CaiDefects cai_defects(std::size_t k, StageCache& cache, std::size_t n_max, const OpNormOptions& opt) {
  const GrowthSequence& a = cache.sequence();
  if (k < 1) fail(ErrorKind::Domain, "cai index starts at 1");
  const BigInt& ak_big = a.at(k);
  if (ak_big > 4096) fail(ErrorKind::Resource, "g_{a_k}^{a_k} has degree above 4096");
  const long ak = ak_big.get_si();
  const long kk = static_cast<long>(k);
  const AlgebraElement y = make_gn(ak).pow(ak);
  const AlgebraElement g = make_g();
  const AlgebraElement ga = g.pow(ak);
  CaiDefects out;
  out.k = k;
  out.norm_xk = cai_entry("norm_xk", "||g_{a_k}^{a_k}|| <= 1 + 1/k", y, Rational(1) + Rational(BigInt(1), BigInt(kk)),
                          cache, n_max, opt);
  out.defect_g = cai_entry("defect_g", "||g_{a_k}^{a_k} g - g|| <= 1/k", y * g - g, Rational(BigInt(1), BigInt(kk)),
                           cache, n_max, opt);
  out.tail_k = cai_entry("tail_k", "||g^{a_k} (1 - P_{a_k})|| <= k^{-a_k}", ga - ga * make_Pn(ak),
                         Rational(1) / Rational(kk).pow(ak), cache, n_max, opt);
  return out;
}

}  // namespace stagecert
