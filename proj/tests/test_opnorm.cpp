#include <doctest.h>

#include <map>
#include <random>

#include "oracles/oracles.hpp"
#include "stagecert/opnorm.hpp"

using namespace stagecert;

namespace {

/// every stage generator as a diagonal on the block: the non-e ones, then a_j^-1 e_j
std::vector<RVec> generator_diagonals(const GramModel& m) {
  std::vector<RVec> out = m.gens.characters;
  for (long t = 0; t < m.dim(); ++t) {
    RVec d(m.dim());
    d[t] = m.gens.e_weight[t];
    out.push_back(d);
  }
  return out;
}

bool contraction_certified(const ScaledGram& rg, const RVec& diag) {
  RationalMatrix c = rg.K;
  for (std::size_t j = 0; j < rg.rank(); ++j)
    for (std::size_t k = 0; k < rg.rank(); ++k) c(j, k) -= diag[rg.support[j]] * rg.K(j, k) * diag[rg.support[k]];
  return certify_positive_definite(c, rg.precision).result == Definiteness::Positive;
}

RVec times(const RVec& d, const RVec& x) {
  RVec y(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) y[t] = d[t] * x[t];
  return y;
}

}  // namespace

TEST_CASE("scaled Gram reproduces G") {
  const GramModel m = build_gram_model(GrowthSequence::preset("desk-small"), 1);
  const ScaledGram rg = scale_gram(m);
  REQUIRE(rg.rank() > 0);
  RationalMatrix back(m.dim(), m.dim());
  for (std::size_t j = 0; j < rg.rank(); ++j)
    for (std::size_t k = 0; k < rg.rank(); ++k)
      back(rg.support[j], rg.support[k]) = rg.lambda[j] * rg.K(j, k) * rg.lambda[k];
  CHECK(back == m.G);
  for (std::size_t j = 0; j < rg.rank(); ++j) CHECK(m.phi.e_coeffs()[rg.support[j]] == rg.lambda[j]);
}

TEST_CASE("every stage generator is a contraction") {
  for (const char* name : {"desk-small", "desk-medium"}) {
    CAPTURE(name);
    StageCache cache(GrowthSequence::preset(name));
    const GramModel& m = cache.model(1);
    const ScaledGram& rg = cache.scaled(1);
    const auto diags = generator_diagonals(m);
    OpNormOptions opt;
    for (const auto& d : diags) {
      const NormEnclosure e = op_norm(m, rg, d, opt);
      CHECK(e.hi <= Rational(1) + Rational::pow2(-opt.precision_bits));
      CHECK(e.lo <= e.hi);
      CHECK(contraction_certified(rg, d));
    }
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 100; ++rep) {
      const RVec x = oracle::random_vector(rng, static_cast<std::size_t>(m.dim()));
      const Rational base = seminorm_sq(m, x);
      for (std::size_t g = 0; g < m.gens.count_non_e(); ++g) CHECK(seminorm_sq(m, times(diags[g], x)) <= base);
      for (long t = 0; t < m.dim(); ++t) {
        const Rational w = m.gens.e_weight[t] * x[t];
        CHECK(w * w * m.G(t, t) <= base);
      }
    }
  }
}

TEST_CASE("the gamma0 witness bounds the norm of g from below") {
  for (const char* name : {"desk-small", "desk-medium"}) {
    CAPTURE(name);
    const GramModel m = build_gram_model(GrowthSequence::preset(name), 1);
    const DecompositionSums s = decomposition_sums(m);
    const RVec diag = stage_diagonal(make_g(), m.stage);
    const RVec ones(m.dim(), Rational(1));
    const Rational ratio = rayleigh(m, diag, ones);
    CHECK(ratio == s.g1_sq / s.g0_sq);

    OpNormOptions opt;
    opt.witnesses.push_back(ones);
    const NormEnclosure e = op_norm(m, make_g(), opt);
    REQUIRE_FALSE(e.witness.empty());
    CHECK(rayleigh(m, diag, e.witness) >= e.lo_sq);
    CHECK(e.lo_sq >= ratio);
    CHECK(e.lo >= sqrt_enclosure(ratio, opt.precision_bits).lo() - Rational::pow2(-opt.precision_bits));
    CHECK(e.lo * e.lo <= e.lo_sq);
    CHECK(e.hi * e.hi >= e.hi_sq);
    CHECK(e.hi <= 1);
    CHECK(e.hi - e.lo <= Rational::pow2(-opt.precision_bits + 1));
    if (s.g0_sq <= 9 * s.g1_sq) CHECK(e.lo >= Rational(BigInt(1), BigInt(3)) - Rational::pow2(-opt.precision_bits));
  }
}

TEST_CASE("uniform diagonals are exact") {
  const GramModel m = build_gram_model(GrowthSequence::preset("desk-small"), 1);
  const ScaledGram rg = scale_gram(m);
  const NormEnclosure one = op_norm(m, rg, RVec(m.dim(), Rational(1)));
  CHECK(one.exact);
  CHECK(one.lo == 1);
  CHECK(one.hi == 1);
  CHECK(one.hi_method == "exact");
  const NormEnclosure half = op_norm(m, rg, RVec(m.dim(), Rational(BigInt(-1), BigInt(2))));
  CHECK(half.exact);
  CHECK(half.hi == Rational(BigInt(1), BigInt(2)));
  const NormEnclosure zero = op_norm(m, rg, RVec(m.dim()));
  CHECK(zero.hi == 0);
  std::mt19937_64 rng(67);
  const RVec x = oracle::random_vector(rng, 7);
  CHECK(rayleigh(m, RVec(7, Rational(3)), x) == 9);
}

TEST_CASE("op norm encloses the Rayleigh quotient of random vectors") {
  const GramModel m = build_gram_model(GrowthSequence::preset("desk-small"), 1);
  const ScaledGram rg = scale_gram(m);
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 5; ++rep) {
    const RVec d = oracle::random_vector(rng, 7);
    const NormEnclosure e = op_norm(m, rg, d);
    CHECK(e.hi_method == "pd-certificate");
    CHECK(rayleigh(m, d, e.witness) >= e.lo_sq);
    for (int k = 0; k < 20; ++k) {
      const RVec x = oracle::random_vector(rng, 7);
      if (seminorm_sq(m, x).is_zero()) continue;
      CHECK(rayleigh(m, d, x) <= e.hi_sq);
    }
  }
}

TEST_CASE("global norms") {
  StageCache cache(GrowthSequence::preset("desk-small"));
  const GlobalNorm zero = global_norm(AlgebraElement::zero(), cache, 1);
  CHECK(zero.hi == 0);
  const GlobalNorm e1 = global_norm(make_e(1), cache, 1);
  CHECK(e1.lo >= 1);
  CHECK(e1.hi <= 2);
  const GlobalNorm g = global_norm(make_g(), cache, 1);
  CHECK(g.hi <= 1);
  CHECK(g.lo >= Rational(BigInt(1), BigInt(2)));
  CHECK(g.stages.size() == 2);
  CHECK(g.stages[0].n == 0);
}

TEST_CASE("approximate identity defects are recorded") {
  StageCache cache(GrowthSequence::preset("desk-small"));
  const CaiDefects c = cai_defects(1, cache, 1);
  for (const CaiEntry* e : {&c.norm_xk, &c.defect_g, &c.tail_k}) {
    CAPTURE(e->name);
    CHECK(e->verdict != Verdict::Undecidable);
    CHECK(e->norm.lo <= e->norm.hi);
  }
  CHECK(c.norm_xk.target == 2);
  CHECK(c.defect_g.target == 1);
  CHECK(c.tail_k.target == 1);
  // x_k e_m = (k/(k+1)) e_m once a_k >= m
  const AlgebraElement x1 = make_gn(2).pow(2).scaled(Rational(BigInt(1), BigInt(2)));
  CHECK(x1 * make_e(1) == make_e(1).scaled(Rational(BigInt(1), BigInt(2))));
  CHECK(x1 * make_e(2) == make_e(2).scaled(Rational(BigInt(1), BigInt(2))));
}
