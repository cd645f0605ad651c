#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "stagecert/functional.hpp"

using namespace stagecert;

namespace {

struct Case {
  std::vector<long> a;
  std::size_t n;
};

const std::vector<Case> kCases{{{2, 9}, 1}, {{3, 40}, 1}, {{2, 9, 180}, 1}, {{2, 9, 180}, 2}, {{2, 11}, 1}};

GrowthSequence seq(const std::vector<long>& v) { return GrowthSequence(std::vector<BigInt>(v.begin(), v.end())); }

}  // namespace

TEST_CASE("phi on the gamma basis matches tuple enumeration") {
  for (const auto& c : kCases) {
    const GrowthSequence a = seq(c.a);
    const PhiFunctional phi(a, make_stage(a, c.n));
    const auto table = oracle::phi_table(c.a, static_cast<long>(c.n));
    for (long k = 0; k < phi.dim(); ++k) {
      CHECK(phi.gamma(k) == oracle::phi_value(table, k));
      CHECK(phi_gamma_formula(a, c.n, k) == oracle::phi_value(table, k));
    }
    CHECK(phi.gamma(1) == 1);
    CHECK(phi.gamma(0) == 0);
    CHECK_THROWS_AS(phi.gamma(phi.dim()), Error);
    CHECK_THROWS_AS(phi.gamma(-1), Error);
  }
  const GrowthSequence a = seq({2, 9});
  CHECK(PhiFunctional(a, make_stage(a, 1)).gamma(3) == Rational(BigInt(1), BigInt(32)));
}

TEST_CASE("e-coefficients solve the Vandermonde system") {
  for (const auto& c : kCases) {
    const GrowthSequence a = seq(c.a);
    const Stage s = make_stage(a, c.n);
    if (s.dim() > 64) continue;
    const PhiFunctional phi(a, s);
    const auto table = oracle::phi_table(c.a, static_cast<long>(c.n));
    CHECK(phi.e_coeffs() == oracle::lambda_by_vandermonde(s.lo, s.hi, table));
  }
}

TEST_CASE("reconstruction residual is zero at every buildable stage") {
  for (const auto& c : kCases) {
    const GrowthSequence a = seq(c.a);
    const PhiFunctional phi(a, make_stage(a, c.n));
    CHECK(phi.reconstruction_residual() == 0);
    for (long k = 0; k < phi.dim(); ++k) {
      Rational sum;
      for (long t = 0; t < phi.dim(); ++t) sum += phi.e_coeffs()[t] * Rational::pow2(-(phi.stage().coord(t)) * k);
      CHECK(sum == phi.gamma(k));
    }
  }
}

TEST_CASE("both evaluation paths agree past the block") {
  std::mt19937_64 rng(31);
  for (const auto& c : kCases) {
    const GrowthSequence a = seq(c.a);
    const PhiFunctional phi(a, make_stage(a, c.n));
    std::uniform_int_distribution<long> ls(phi.dim(), phi.dim() + 400);
    for (int rep = 0; rep < 100; ++rep) {
      const long l = ls(rng);
      CHECK(phi.gamma_extended(l) == phi.gamma_extended_lagrange(l));
    }
    for (long l = 0; l < phi.dim(); ++l) CHECK(phi.gamma_extended(l) == phi.gamma(l));
  }
  const GrowthSequence a = seq({2, 9});
  const PhiFunctional phi(a, make_stage(a, 1));
  CHECK(phi.gamma_extended(7) == phi.gamma_extended_lagrange(7));
}

TEST_CASE("phi on block vectors") {
  const GrowthSequence a = seq({2, 9});
  const Stage s = make_stage(a, 1);
  const PhiFunctional phi(a, s);
  CHECK(phi.apply(GammaVector::gamma_k(s, 1)) == 1);
  CHECK(phi.apply(GammaVector(s)) == 0);
  CHECK(phi.apply(GammaVector::gamma_k(s, 1, 2) + GammaVector::gamma_k(s, 0)) == 2);

  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 20; ++rep) {
    const RVec x = oracle::random_vector(rng, 7);
    const GammaVector gx(s, interpolate_gamma(s, x));
    CHECK(phi.apply(gx) == phi.apply_coords(x));
    CHECK(phi.apply(GammaVector::from_coords(s, x)) == phi.apply_coords(x));
    // phi(gamma_k x) through the shifted gamma coordinates
    for (long k : {1L, 3L, 8L}) {
      Rational shifted;
      for (const auto& [i, c] : gx.gamma()) shifted += c * phi.gamma_extended(i + k);
      CHECK(phi.apply(GammaVector::gamma_k(s, k) * gx) == shifted);
    }
  }
}

TEST_CASE("gamma values are small") {
  for (const auto& c : kCases) {
    const GrowthSequence a = seq(c.a);
    const PhiFunctional phi(a, make_stage(a, c.n));
    Rational total;
    for (const auto& v : phi.gamma_values()) {
      CHECK(v >= 0);
      total += v;
    }
    CHECK(total <= 2);
  }
}

TEST_CASE("lambda representations") {
  const GrowthSequence a = seq({2, 9});
  CHECK(lambda_representations(a, 2, 11).size() == 1);
  CHECK(lambda_representations(a, 2, 1).empty());
  const GrowthSequence b = seq({2, 4});
  CHECK(lambda_representations(b, 2, 4).size() == 2);
  CHECK_THROWS_AS(phi_gamma_formula(b, 2, 5), Error);
}

TEST_CASE("tail scan records every window entry") {
  const GrowthSequence a = seq({2, 9});
  const PhiFunctional phi(a, make_stage(a, 1));
  const auto scan = lemma_gk_scan(phi, 10);
  REQUIRE(scan.size() == 10);
  for (const auto& e : scan) {
    CHECK(e.value == phi.gamma_extended(e.l));
    CHECK(e.verdict != Verdict::Undecidable);
    CHECK(e.bound_exponent == Rational(-e.l * 3) - Rational(BigInt(81), BigInt(3)));
  }
}
