#include <doctest.h>

#include <cmath>

#include "stagecert/spectral.hpp"

using namespace stagecert;

TEST_CASE("partial-fraction idempotents are the unit vectors") {
  const TruncatedModel model(10);
  RVec sum(10);
  for (long j = 1; j <= 10; ++j) {
    const IdempotentResult r = spectral_idempotent(model, j);
    for (long i = 1; i <= 10; ++i) {
      CHECK(r.exact[i - 1] == (i == j ? 1 : 0));
      sum[i - 1] += r.exact[i - 1];
    }
  }
  CHECK(sum == RVec(10, Rational(1)));
  CHECK_THROWS_AS(spectral_idempotent(model, 11), Error);
  CHECK_THROWS_AS(TruncatedModel(0), Error);
}

TEST_CASE("contour quadrature recovers e_3") {
  const TruncatedModel model(10);
  const IdempotentResult r = spectral_idempotent_contour(model, 3, {64, Rational(BigInt(1), BigInt(4))});
  double err = 0;
  for (long i = 1; i <= 10; ++i) err = std::max(err, std::abs(r.approx[i - 1] - (i == 3 ? 1.0 : 0.0)));
  CHECK(err < 1e-12);
  CHECK(r.nodes == 64);
  CHECK(r.error_estimate < 1e-12);
  CHECK_THROWS_AS(spectral_idempotent_contour(model, 3, {64, Rational(1)}), Error);
  CHECK_THROWS_AS(spectral_idempotent_contour(model, 3, {64, Rational(BigInt(1), BigInt(2))}), Error);
  CHECK_THROWS_AS(spectral_idempotent_contour(model, 3, {0, Rational(BigInt(1), BigInt(4))}), Error);
}

TEST_CASE("point spectrum probe") {
  const TruncatedModel model(4);
  CHECK(approximate_point_spectrum_probe(model, Rational(BigInt(1), BigInt(3))) == Rational(BigInt(1), BigInt(12)));
  CHECK(approximate_point_spectrum_probe(model, 0) == Rational(BigInt(1), BigInt(16)));
  CHECK_THROWS_AS(approximate_point_spectrum_probe(model, Rational(BigInt(1), BigInt(2))), Error);
}

TEST_CASE("idempotents are polynomials in g") {
  const TruncatedModel model(8);
  for (long j = 1; j <= 8; ++j) {
    const RVec c = generation_polynomial(model, j);
    for (long i = 1; i <= 8; ++i) {
      Rational v;
      for (long k = 1; k <= 8; ++k) v += c[k - 1] * Rational::pow2(-i * k);
      CHECK(v == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("full spectral report") {
  const SpectralReport r = verify_lemma2(10, 3);
  CHECK(r.all_pass());
  CHECK(r.checks.size() == 6);
}

TEST_CASE("weighted sequence algebra") {
  const MirkilAlgebra alg(20);
  const RVec p = alg.unit_vector(3, 8);
  CHECK(alg.multiply(p, p) == p);
  const MirkilReport r = mirkil_verify(20);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.id);
  CHECK(r.all_pass());
  CHECK(r.checks.size() == 6);
  for (std::size_t i = 1; i < r.residuals.size(); ++i) CHECK(r.residuals[i].second <= r.residuals[i - 1].second);
}
