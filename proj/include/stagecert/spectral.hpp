#pragma once

#include <string>
#include <vector>

#include "stagecert/algebra.hpp"

namespace stagecert {

/// Multiplication by g on lin{e_1..e_m}: the diagonal 2^-j.
struct TruncatedModel {
  long m = 0;
  explicit TruncatedModel(long size);
  Rational eigenvalue(long j) const { return Rational::pow2(-j); }
  RVec diagonal() const;
};

enum class IdempotentMethod { PartialFractions, ContourQuadrature };

struct IdempotentResult {
  long j = 0;
  IdempotentMethod method = IdempotentMethod::PartialFractions;
  RVec exact;                  // partial fractions
  std::vector<double> approx;  // contour quadrature
  double error_estimate = 0;   // |K-point - 2K-point| in sup norm
  long nodes = 0;
  double radius = 0;
};

struct ContourOptions {
  long nodes = 64;
  Rational radius_fraction = Rational(1, 4);  // radius = fraction * 2^-j
};

/// Lagrange interpolation in g: prod_{i != j} (g - 2^-i)/(2^-j - 2^-i). Exact.
IdempotentResult spectral_idempotent(const TruncatedModel& model, long j);
/// Trapezoid rule for (1/2 pi i) contour integral of (z - g)^-1 on |z - 2^-j| = r.
IdempotentResult spectral_idempotent_contour(const TruncatedModel& model, long j, const ContourOptions& opt = {});

/// min_j |2^-j - lambda|; Domain error when lambda is an eigenvalue
Rational approximate_point_spectrum_probe(const TruncatedModel& model, const Rational& lambda);

/// Coefficients c_1..c_m of a polynomial without constant term with sum_k c_k 2^-ik = delta_ij on the model.
RVec generation_polynomial(const TruncatedModel& model, long j);

struct CheckLine {
  std::string id;
  std::string statement;
  bool pass = false;
  std::string detail;
};

struct SpectralReport {
  long m = 0;
  std::vector<CheckLine> checks;
  bool all_pass() const;
};

/// Partial-fraction idempotents, their sum and orthogonality, e_j = 2^j g e_j, contour recovery of e_j, generation.
SpectralReport verify_lemma2(long m, long contour_j, const ContourOptions& opt = {});

/// Weighted product x.y = (2^-n x_n y_n) on N coordinates.
struct MirkilAlgebra {
  long N = 0;
  explicit MirkilAlgebra(long size);
  RVec multiply(const RVec& x, const RVec& y) const;
  RVec unit_vector(long n, const Rational& c = 1) const;
  RVec generator() const { return RVec(N, Rational(1)); }
};

struct MirkilReport {
  long N = 0;
  std::vector<CheckLine> checks;
  std::vector<std::pair<long, Rational>> residuals;  // (k, sup_{j > n} of T^k) for the compactness sanity line
  bool all_pass() const;
};

MirkilReport mirkil_verify(long N, unsigned long seed = 20240601, long random_triples = 50);

}  // namespace stagecert
