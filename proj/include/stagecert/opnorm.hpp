#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "stagecert/seminorm.hpp"
#include "stagecert/verified.hpp"

namespace stagecert {

/// G = Lambda K Lambda restricted to the support of lambda, where G vanishes elsewhere.
/// K_jk = e_diag_j^[j==k] prod_s 1/(1 - chi_j(s) chi_k(s)) is positive definite.
struct ScaledGram {
  std::vector<std::size_t> support;  // block indices with lambda_t != 0
  RVec lambda;                       // lambda on the support
  RationalMatrix K;
  long precision = 0;  // working precision at which K was certified
  std::size_t rank() const { return support.size(); }
};

/// Integrity error if K is certified indefinite, Resource error if no precision decides.
ScaledGram scale_gram(const GramModel& m);

/// (Delta_n T)_j over the block
RVec stage_diagonal(const AlgebraElement& t, const Stage& s);

/// (Dx)^T G (Dx) / x^T G x; Degenerate error if x^T G x = 0
Rational rayleigh(const GramModel& m, const RVec& diag, const RVec& x);

struct NormEnclosure {
  Rational lo, hi;        // bounds on the norm itself
  Rational lo_sq, hi_sq;  // bounds on its square; lo_sq <= rayleigh(witness)
  bool exact = false;
  RVec witness;           // block coordinates
  std::string hi_method;  // "pd-certificate" or "exact"
  long steps = 0;
};

struct OpNormOptions {
  long precision_bits = 64;
  long max_steps = 200;
  std::vector<RVec> witnesses;  // extra candidate vectors in block coordinates
};

/// Certified enclosure of sup sqrt((Dx)^T G (Dx) / x^T G x). ker G is spanned by coordinate vectors,
/// so every diagonal D leaves it invariant and the supremum is the top eigenvalue of (DKD, K).
NormEnclosure op_norm(const GramModel& m, const ScaledGram& r, const RVec& diag, const OpNormOptions& opt = {});
NormEnclosure op_norm(const GramModel& m, const AlgebraElement& t, const OpNormOptions& opt = {});

/// Lazily built stage models of one sequence.
class StageCache {
 public:
  StageCache(GrowthSequence a, StageOptions opt = {}) : a_(std::move(a)), opt_(opt) {}
  const GrowthSequence& sequence() const { return a_; }
  const StageOptions& options() const { return opt_; }
  const GramModel& model(std::size_t n);
  const ScaledGram& scaled(std::size_t n);

 private:
  GrowthSequence a_;
  StageOptions opt_;
  std::map<std::size_t, std::unique_ptr<GramModel>> models_;
  std::map<std::size_t, std::unique_ptr<ScaledGram>> scaled_;
};

struct StageNormRow {
  std::size_t n = 0;      // 0 is the c0 norm
  bool available = true;
  std::string reason;
  Rational lo, hi;
  bool exact = false;
};

struct GlobalNorm {
  Rational lo, hi;
  bool exact = false;
  std::vector<StageNormRow> stages;
  std::size_t last_stage = 0;  // truncation point actually used
};

/// max of the c0 norm and the stage norms 1..n_max; a truncation of the full supremum
GlobalNorm global_norm(const AlgebraElement& t, StageCache& cache, std::size_t n_max,
                       const OpNormOptions& opt = {});

struct CaiEntry {
  std::string name;
  std::string statement;
  GlobalNorm norm;
  Rational target;
  Verdict verdict = Verdict::Undecidable;
};

struct CaiDefects {
  std::size_t k = 0;
  CaiEntry norm_xk, defect_g, tail_k;
};

/// ||g_{a_k}^{a_k}|| <= 1 + 1/k, ||g_{a_k}^{a_k} g - g|| <= 1/k, ||g^{a_k}(1 - P_{a_k})|| <= k^{-a_k}
CaiDefects cai_defects(std::size_t k, StageCache& cache, std::size_t n_max, const OpNormOptions& opt = {});

}  // namespace stagecert
