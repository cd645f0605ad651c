#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "stagecert/linalg.hpp"
#include "stagecert/verified.hpp"

using namespace stagecert;

namespace {

RationalMatrix hilbert(std::size_t n) {
  RationalMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = Rational(BigInt(1), BigInt(static_cast<long>(i + j + 1)));
  return h;
}

RationalMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto v = oracle::random_vector(rng, 1)[0];
      m(i, j) = m(j, i) = v;
    }
  return m;
}

RationalMatrix gram_of(const std::vector<RVec>& rows) {
  const std::size_t n = rows[0].size();
  RationalMatrix g(n, n);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) += r[i] * r[j];
  return g;
}

}  // namespace

TEST_CASE("balanced sum equals the running sum") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const RVec v = oracle::random_vector(rng, static_cast<std::size_t>(rep * 3 + 1));
    Rational naive;
    for (const auto& x : v) naive += x;
    CHECK(balanced_sum(v) == naive);
  }
  CHECK(balanced_sum({}) == 0);
}

TEST_CASE("matrix products and bilinear forms") {
  std::mt19937_64 rng(11);
  const RationalMatrix a = random_symmetric(rng, 5);
  const RVec x = oracle::random_vector(rng, 5), y = oracle::random_vector(rng, 5);
  Rational direct;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) direct += x[i] * a(i, j) * y[j];
  CHECK(bilinear(a, x, y) == direct);
  CHECK(dot(x, a * y) == direct);
  CHECK(a.is_symmetric());
  CHECK(a * RationalMatrix::identity(5) == a);
  CHECK(a.transpose() == a);
}

TEST_CASE("pivoted LDL reconstructs a PSD matrix of deficient rank") {
  std::mt19937_64 rng(3);
  std::vector<RVec> rows;
  for (int r = 0; r < 3; ++r) rows.push_back(oracle::random_vector(rng, 6));
  const RationalMatrix g = gram_of(rows);
  const PivotedLdl f = pivoted_ldl(g);
  REQUIRE(f.psd);
  CHECK(f.rank() == 3);
  RationalMatrix rebuilt(6, 6);
  for (std::size_t k = 0; k < f.rank(); ++k)
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) rebuilt(i, j) += f.factor(k, i) * f.delta[k] * f.factor(k, j);
  CHECK(rebuilt == g);
  for (const auto& d : f.delta) CHECK(d > 0);
  CHECK(is_positive_semidefinite(g));
}

TEST_CASE("indefinite matrices produce a negative witness") {
  std::mt19937_64 rng(5);
  int seen = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const RationalMatrix m = random_symmetric(rng, 4);
    const PivotedLdl f = pivoted_ldl(m);
    const DefinitenessTest t = positive_definite_test(m);
    if (!f.psd) {
      ++seen;
      CHECK(quadratic(m, f.negative_witness) < 0);
      CHECK_FALSE(is_positive_semidefinite(m));
    }
    if (!t.positive_definite) {
      CHECK(quadratic(m, t.witness) == t.failing_pivot);
      CHECK(t.failing_pivot <= 0);
    }
    const DefinitenessCertificate c = certify_positive_definite(m);
    CHECK(c.result != Definiteness::Unknown);
    CHECK((c.result == Definiteness::Positive) == t.positive_definite);
    if (c.result == Definiteness::NotPositive) CHECK(quadratic(m, c.witness) <= 0);
  }
  CHECK(seen > 0);
}

TEST_CASE("certified definiteness on ill-conditioned matrices") {
  for (std::size_t n : {4u, 8u, 12u}) {
    const RationalMatrix h = hilbert(n);
    CHECK(positive_definite_test(h).positive_definite);
    const DefinitenessCertificate c = certify_positive_definite(h);
    CHECK(c.result == Definiteness::Positive);
  }
  // Hilbert minus a tiny multiple of its smallest direction stays PD; subtracting 1 from a corner does not
  RationalMatrix h = hilbert(8);
  h(7, 7) -= 1;
  const DefinitenessCertificate c = certify_positive_definite(h);
  REQUIRE(c.result == Definiteness::NotPositive);
  CHECK(quadratic(h, c.witness) < 0);
  CHECK(certify_positive_definite(RationalMatrix(3, 3)).result == Definiteness::NotPositive);
}

TEST_CASE("ratio bounds enclose the exact Rayleigh quotient") {
  std::mt19937_64 rng(13);
  const RationalMatrix b = hilbert(6);
  for (int rep = 0; rep < 10; ++rep) {
    const RationalMatrix a = random_symmetric(rng, 6);
    const RVec x = oracle::random_vector(rng, 6);
    if (quadratic(b, x).is_zero()) continue;
    const Rational exact = quadratic(a, x) / quadratic(b, x);
    const RatioBounds r = ratio_bounds(a, b, x, 96);
    REQUIRE(r.valid);
    CHECK(r.lo <= exact);
    CHECK(exact <= r.hi);
    CHECK(r.hi - r.lo < Rational::pow2(-60) * (exact.abs() + 1));
  }
}

TEST_CASE("dominant generalized eigenvector") {
  // A = diag(1,2,3), B = I: top eigenvalue 3 along e_3
  RationalMatrix a(3, 3);
  for (std::size_t i = 0; i < 3; ++i) a(i, i) = static_cast<long>(i + 1);
  const EigenEstimate e = dominant_eigenvector(a, RationalMatrix::identity(3), 128);
  REQUIRE(e.ok);
  CHECK(e.mu == doctest::Approx(3.0));
  CHECK(quadratic(a, e.x) / dot(e.x, e.x) > Rational(BigInt(2999), BigInt(1000)));
}
