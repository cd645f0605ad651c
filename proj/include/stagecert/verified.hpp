#pragma once

#include "stagecert/linalg.hpp"

namespace stagecert {

enum class Definiteness { Positive, NotPositive, Unknown };

struct DefinitenessCertificate {
  Definiteness result = Definiteness::Unknown;
  RVec witness;        // nonzero dyadic x with x^T M x <= 0 when NotPositive
  long precision = 0;  // working precision of the deciding attempt
};

/// Approximate LDL^T at working precision, then diagonal dominance of X^T M X with X ~ L^-T D^-1/2,
/// everything outward rounded. Precision doubles from start to max; Unknown if no attempt decides.
DefinitenessCertificate certify_positive_definite(const RationalMatrix& m, long start_precision = 128,
                                                  long max_precision = 1L << 15);

struct RatioBounds {
  Rational lo, hi;  // dyadic; lo <= x^T A x / x^T B x <= hi
  bool valid = false;  // false when the denominator enclosure contains 0
};

RatioBounds ratio_bounds(const RationalMatrix& a, const RationalMatrix& b, const RVec& x, long precision);

struct EigenEstimate {
  bool ok = false;
  double mu = 0;  // top eigenvalue of (A, B)
  RVec x;         // dyadic approximation of its eigenvector
};

/// B must be positive definite at the given precision; A symmetric.
EigenEstimate dominant_eigenvector(const RationalMatrix& a, const RationalMatrix& b, long precision);

}  // namespace stagecert
