#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "stagecert/algebra.hpp"
#include "stagecert/kernels.hpp"

namespace stagecert {

/// All decompositions m = sum t_i a_i with 0 <= t_i <= a_i, i <= n (at most `limit` of them).
std::vector<std::vector<long>> lambda_representations(const GrowthSequence& a, std::size_t n, long m,
                                                      std::size_t limit = 2);

/// phi_n(gamma_k) from the product formula, any k >= 0; Integrity error if k-1 has two decompositions.
Rational phi_gamma_formula(const GrowthSequence& a, std::size_t n, long k);

/// The functional phi_n on H_n. Copies share the lazily computed e-coefficients.
class PhiFunctional {
 public:
  PhiFunctional(const GrowthSequence& a, Stage s, kernels::Backend backend = kernels::Backend::Parallel);

  const Stage& stage() const { return stage_; }
  long dim() const { return stage_.dim(); }

  /// phi_n(gamma_k) for 0 <= k < d; Range error otherwise
  const Rational& gamma(long k) const;
  const RVec& gamma_values() const { return gamma_; }

  /// lambda_t for j = lo + 1 + t
  const RVec& e_coeffs() const;

  /// phi_n(gamma_l) = sum_j lambda_j 2^-jl
  Rational gamma_extended(long l) const;
  /// sum_i p_{n,i}(2^-l) phi_n(gamma_i), evaluated without the e-coefficients
  Rational gamma_extended_lagrange(long l) const;

  Rational apply(const GammaVector& x) const;
  Rational apply_coords(const RVec& x) const;

  /// max_k |sum_j lambda_j 2^-jk - phi_n(gamma_k)| over 0 <= k < d, exactly
  Rational reconstruction_residual() const;

 private:
  struct Lazy {
    std::once_flag once;
    RVec lambda;
    std::once_flag denom_once;
    RVec denom;  // prod_{m != i} (2^-i - 2^-m)
  };
  Stage stage_;
  kernels::Backend backend_;
  RVec gamma_;
  std::shared_ptr<Lazy> lazy_;
};

struct GkEntry {
  long l = 0;
  Rational value;
  Rational bound_exponent;  // -l(1 + a_n) - a_{n+1}^2 / 3
  Verdict verdict = Verdict::Undecidable;
};

/// |phi_n(gamma_l)| <= 2^(-l(1+a_n) - a_{n+1}^2/3) for l in [d, d + window)
std::vector<GkEntry> lemma_gk_scan(const PhiFunctional& phi, long window);

}  // namespace stagecert
