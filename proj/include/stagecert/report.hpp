#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "stagecert/config.hpp"
#include "stagecert/opnorm.hpp"

namespace stagecert::report {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

/// [num, den] as decimal strings
json rational(const Rational& q);
Rational rational_from(const json& j);
/// {lo: [n, d], hi: [n, d]}
json enclosure(const Rational& lo, const Rational& hi);
json enclosure(const CertifiedScalar& c);

/// {poly: [[m, num, den]...], correction: [[j, num, den]...]}
json element(const AlgebraElement& x);
AlgebraElement element_from(const json& j);

/// {n, gamma_values: [[k, num, den]...], e_coeffs: [[j, num, den]...]}
json phi(const PhiFunctional& f);

json sequence(const GrowthSequence& a);
json conditions(const ConditionReport& r);
json lexicographic(const LexResult& r);
json norm(const NormEnclosure& e);
json global_norm(const GlobalNorm& g);
json verdicts(const std::vector<BoundVerdict>& v);

struct StageSummary {
  std::size_t n = 0;
  bool available = false;
  std::string reason;
  DecompositionSums sums;
  CertifiedScalar g0, g1;
  NormEnclosure opnorm_g;
  std::vector<BoundVerdict> verdicts;
};

/// Everything the report needs for one stage; unavailable stages carry the reason.
StageSummary summarize_stage(StageCache& cache, std::size_t n, long precision_bits);
json stage(const StageSummary& s);

json build(const RunConfig& cfg);

const std::vector<std::string>& csv_metrics();
/// header plus one row per (stage, metric)
std::string to_csv(const json& report);

}  // namespace stagecert::report
