#pragma once

#include <string>
#include <vector>

#include "stagecert/functional.hpp"

namespace stagecert {

struct StageOptions {
  long dimension_cap = 512;
  kernels::Backend backend = kernels::Backend::Parallel;
};

/// Everything attached to stage n: generators, phi_n, and the Gram matrix of the stage seminorm.
struct GramModel {
  Stage stage;
  GeneratorSet gens;
  PhiFunctional phi;
  kernels::KernelInput input;  // all non-e generators plus the e-family
  RationalMatrix G;
  kernels::Backend backend = kernels::Backend::Parallel;

  long dim() const { return stage.dim(); }
};

/// Divergence error if some generator has |chi_j(s)| >= 1 on the block.
GramModel build_gram_model(const GrowthSequence& a, std::size_t n, const StageOptions& opt = {});

Rational seminorm_sq(const GramModel& m, const GammaVector& x);
Rational seminorm_sq(const GramModel& m, const RVec& coords);
Rational inner(const GramModel& m, const RVec& x, const RVec& y);

struct EnumResult {
  RVec partials;       // partials[D] = sum over |i| <= D
  Rational partial;    // partials.back()
  double converged_digits = 0;  // -log10 of the relative gap to the closed form
};

/// Enumeration of the defining sum over index functions of the non-e generators; e-exponents summed in closed form.
EnumResult seminorm_enum(const GramModel& m, const RVec& coords, long max_degree);
EnumResult seminorm_enum(const GramModel& m, const GammaVector& x, long max_degree);

/// Closed form with every geometric series truncated at total degree D.
Rational seminorm_truncated(const GramModel& m, const RVec& coords, long degree);

struct DecompositionSums {
  Rational g0_sq, g1_sq;
  Rational I0, I1, I2, I3;
  Rational I3_direct;  // sum_k lambda_k^2/(a_k^2-1) prod_{s != gamma1} (1 - chi_k(s)^2)^-1
  long i1_degree = 0;  // largest total degree counted in I1
  bool identity_exact() const { return g0_sq == g1_sq + I1 + I2 + I3; }
};

DecompositionSums decomposition_sums(const GramModel& m);

struct BoundVerdict {
  std::string id;
  std::string statement;
  Verdict verdict = Verdict::Undecidable;
  std::string lhs, rhs;
};

/// g1 >= 1/2 prod (j+1)^2/(2j+1), g0 <= 9 g1, g0 > 0
std::vector<BoundVerdict> verify_gamma_bounds(const GramModel& m, const DecompositionSums& s);
/// I1 < 2 prod, I2^3 <= 2^(-2 a_{n+1}^2), I3 <= 1
std::vector<BoundVerdict> verify_sum_bounds(const GramModel& m, const DecompositionSums& s);

}  // namespace stagecert
