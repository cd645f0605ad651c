#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "stagecert/seminorm.hpp"

using namespace stagecert;

namespace {

struct Desk {
  const char* name;
  std::vector<long> a;
};

const Desk kDesks[] = {{"desk-small", {2, 9}}, {"desk-medium", {3, 40}}};

}  // namespace

TEST_CASE("enumeration matches the literal index-function sum") {
  for (const auto& desk : kDesks) {
    CAPTURE(desk.name);
    const GrowthSequence a = GrowthSequence::preset(desk.name);
    const GramModel m = build_gram_model(a, 1);
    const long lo = desk.a[0], hi = desk.a[1];
    const auto chars = oracle::generator_characters(desk.a, 1, lo, hi);
    const auto lambda = oracle::lambda_by_vandermonde(lo, hi, oracle::phi_table(desk.a, 1));
    const auto tail = oracle::e_tail(desk.a, lo, hi);
    std::mt19937_64 rng(43);
    const long D = 12;
    for (int rep = 0; rep < 50; ++rep) {
      const RVec x = oracle::random_vector(rng, static_cast<std::size_t>(m.dim()));
      const EnumResult e = seminorm_enum(m, x, D);
      REQUIRE(e.partials.size() == static_cast<std::size_t>(D + 1));
      CHECK(e.partials == oracle::enumerate(chars, lambda, tail, x, D));
      for (long k = 1; k <= D; ++k) CHECK(e.partials[k - 1] <= e.partials[k]);
      const Rational full = seminorm_sq(m, x);
      CHECK(e.partial <= full);
      CHECK(seminorm_truncated(m, x, D) == e.partials[D]);
      if (rep < 3)
        for (long k : {0L, 1L, 5L}) CHECK(seminorm_truncated(m, x, k) == e.partials[k]);
    }
  }
}

TEST_CASE("degree zero is phi(x)^2 plus the e-exponent series") {
  const std::vector<long> av{2, 9};
  const GramModel m = build_gram_model(GrowthSequence::preset("desk-small"), 1);
  const auto lambda = oracle::lambda_by_vandermonde(2, 9, oracle::phi_table(av, 1));
  const auto tail = oracle::e_tail(av, 2, 9);
  std::mt19937_64 rng(47);
  const RVec x = oracle::random_vector(rng, 7);
  Rational phi, e;
  for (std::size_t t = 0; t < 7; ++t) {
    phi += lambda[t] * x[t];
    e += tail[t] * (lambda[t] * x[t]) * (lambda[t] * x[t]);
  }
  CHECK(m.phi.apply_coords(x) == phi);
  CHECK(seminorm_enum(m, x, 0).partials[0] == phi * phi + e);
}

TEST_CASE("remainders shrink towards the closed form") {
  const GramModel m = build_gram_model(GrowthSequence::preset("desk-small"), 1);
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 5; ++rep) {
    const RVec x = oracle::random_vector(rng, 7);
    const Rational full = seminorm_sq(m, x);
    const EnumResult e = seminorm_enum(m, x, 16);
    Rational prev = full - e.partials[0];
    for (std::size_t k = 1; k < e.partials.size(); ++k) {
      const Rational r = full - e.partials[k];
      CHECK(r >= 0);
      CHECK(r <= prev);
      prev = r;
    }
    if ((full - e.partials[0]).sign() > 0) CHECK((full - e.partials[16]) * 1000 < full - e.partials[0]);
    CHECK(e.converged_digits > 0);
  }
}

TEST_CASE("seminorm basics") {
  const GrowthSequence a = GrowthSequence::preset("desk-small");
  const GramModel m = build_gram_model(a, 1);
  CHECK(seminorm_sq(m, RVec(7)) == 0);
  std::mt19937_64 rng(59);
  const RVec x = oracle::random_vector(rng, 7), y = oracle::random_vector(rng, 7);
  CHECK(seminorm_sq(m, GammaVector::from_coords(m.stage, x)) == seminorm_sq(m, x));
  RVec s(7);
  for (std::size_t t = 0; t < 7; ++t) s[t] = x[t] + y[t];
  CHECK(seminorm_sq(m, s) == seminorm_sq(m, x) + 2 * inner(m, x, y) + seminorm_sq(m, y));
  CHECK(inner(m, x, y) == inner(m, y, x));
  CHECK(seminorm_sq(m, x) >= 0);
  CHECK_THROWS_AS(build_gram_model(a, 2), Error);
  CHECK_THROWS_AS(build_gram_model(GrowthSequence::preset("desk-two"), 2, {100}), Error);
}

TEST_CASE("decomposition identity at the desk stages") {
  for (const auto& desk : kDesks) {
    CAPTURE(desk.name);
    const GramModel m = build_gram_model(GrowthSequence::preset(desk.name), 1);
    const DecompositionSums s = decomposition_sums(m);
    CHECK(s.identity_exact());
    CHECK(s.I3 == s.I3_direct);
    CHECK(s.I0 == s.I1 + s.I2 + s.I3);
    CHECK(s.g1_sq > 0);
    CHECK(s.I1 >= 0);
    CHECK(s.I2 >= 0);
    CHECK(s.I3 >= 0);

    const long d = m.dim();
    RVec ones(d, Rational(1)), g(d);
    for (long t = 0; t < d; ++t) g[t] = Rational::pow2(-m.stage.coord(t));
    CHECK(s.g0_sq == seminorm_sq(m, ones));
    CHECK(s.g1_sq == seminorm_sq(m, g));

    const auto gamma = verify_gamma_bounds(m, s);
    const auto sums = verify_sum_bounds(m, s);
    CHECK(gamma.size() == 3);
    CHECK(sums.size() == 3);
    for (const auto& v : gamma) CHECK(v.verdict != Verdict::Undecidable);
    for (const auto& v : sums) CHECK(v.verdict != Verdict::Undecidable);
    CHECK(gamma[0].verdict == (s.g1_sq * 2 >= le_product_target(1) ? Verdict::Holds : Verdict::Fails));
    CHECK(gamma[1].verdict == (s.g0_sq <= 9 * s.g1_sq ? Verdict::Holds : Verdict::Fails));
  }
}

TEST_CASE("desk-small regression values") {
  const GramModel m = build_gram_model(GrowthSequence::preset("desk-small"), 1);
  const DecompositionSums s = decomposition_sums(m);
  CHECK(s.I1 == Rational(BigInt(5), BigInt(16)));
  CHECK(s.g1_sq >= Rational(BigInt(2), BigInt(3)));
  CHECK(s.I3 > 1);
  CHECK(s.I2 < Rational(BigInt(1), BigInt(1000)));
}
