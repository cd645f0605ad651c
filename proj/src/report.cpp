#include "stagecert/report.hpp"

#include <sstream>

namespace stagecert::report {

json rational(const Rational& q) { return json::array({q.num().get_str(), q.den().get_str()}); }

Rational rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    fail(ErrorKind::Usage, "rational must be [num, den] strings");
  BigInt n, d;
  if (n.set_str(j[0].get<std::string>(), 10) != 0 || d.set_str(j[1].get<std::string>(), 10) != 0)
    fail(ErrorKind::Usage, "rational components must be decimal integers");
  return Rational(n, d);
}

json enclosure(const Rational& lo, const Rational& hi) { return {{"lo", rational(lo)}, {"hi", rational(hi)}}; }

json enclosure(const CertifiedScalar& c) { return enclosure(c.lo(), c.hi()); }

namespace {

json triples(const std::map<long, Rational>& m) {
  json out = json::array();
  for (const auto& [k, v] : m) out.push_back({k, v.num().get_str(), v.den().get_str()});
  return out;
}

std::map<long, Rational> triples_from(const json& j) {
  std::map<long, Rational> m;
  if (!j.is_array()) fail(ErrorKind::Usage, "expected an array of [index, num, den]");
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer())
      fail(ErrorKind::Usage, "expected [index, num, den]");
    m[t[0].get<long>()] += rational_from(json::array({t[1], t[2]}));
  }
  return m;
}

const char* verdict_name(Verdict v) { return to_string(v); }

}  // namespace

json element(const AlgebraElement& x) { return {{"poly", triples(x.poly())}, {"correction", triples(x.correction())}}; }

AlgebraElement element_from(const json& j) {
  if (!j.is_object() || !j.contains("poly") || !j.contains("correction"))
    fail(ErrorKind::Usage, "element needs poly and correction");
  return AlgebraElement(triples_from(j["poly"]), triples_from(j["correction"]));
}

json phi(const PhiFunctional& f) {
  json g = json::array(), e = json::array();
  for (long k = 0; k < f.dim(); ++k) {
    const Rational& v = f.gamma(k);
    if (!v.is_zero()) g.push_back({k, v.num().get_str(), v.den().get_str()});
  }
  const RVec& lambda = f.e_coeffs();
  for (long t = 0; t < f.dim(); ++t)
    e.push_back({f.stage().coord(t), lambda[t].num().get_str(), lambda[t].den().get_str()});
  return {{"n", f.stage().n}, {"gamma_values", g}, {"e_coeffs", e}};
}

json sequence(const GrowthSequence& a) {
  json entries = json::array(), logs = json::array();
  for (const auto& v : a.exact_entries()) entries.push_back(v.get_str());
  for (const auto& l : a.log_entries()) logs.push_back({{"log2_lo", rational(*l.lo())}, {"log2_hi", l.hi() ? rational(*l.hi()) : json()}});
  return {{"name", a.name()}, {"entries", entries}, {"log_entries", logs}, {"tail", to_string(a.tail())}};
}

json conditions(const ConditionReport& r) {
  json out = json::array();
  for (const auto& c : r.results)
    out.push_back({{"id", c.id},
                   {"group", c.group},
                   {"statement", c.statement},
                   {"index", c.index},
                   {"verdict", verdict_name(c.verdict)},
                   {"witness", c.witness},
                   {"reads", c.reads},
                   {"reads_block", c.reads_block},
                   {"derived_sufficient", c.derived},
                   {"gating", c.gating},
                   {"cost", c.cost}});
  return out;
}

json lexicographic(const LexResult& r) {
  return {{"verdict", verdict_name(r.verdict)}, {"witness", r.witness}, {"method", r.method}};
}

json norm(const NormEnclosure& e) {
  json w = json::array();
  for (const auto& v : e.witness) w.push_back(rational(v));
  return {{"enclosure", enclosure(e.lo, e.hi)},
          {"square", enclosure(round_down(e.lo_sq, 192), round_up(e.hi_sq, 192))},
          {"exact", e.exact},
          {"upper_method", e.hi_method},
          {"steps", e.steps},
          {"witness", w}};
}

json global_norm(const GlobalNorm& g) {
  json rows = json::array();
  for (const auto& r : g.stages) {
    json row = {{"n", r.n}, {"available", r.available}};
    if (r.available)
      row["enclosure"] = enclosure(r.lo, r.hi);
    else
      row["reason"] = r.reason;
    rows.push_back(row);
  }
  return {{"enclosure", enclosure(g.lo, g.hi)}, {"truncated_at", g.last_stage}, {"truncation", true}, {"stages", rows}};
}

json verdicts(const std::vector<BoundVerdict>& v) {
  json out = json::object();
  for (const auto& b : v)
    out[b.id] = {{"statement", b.statement}, {"verdict", verdict_name(b.verdict)}, {"lhs", b.lhs}, {"rhs", b.rhs}};
  return out;
}

StageSummary summarize_stage(StageCache& cache, std::size_t n, long precision_bits) {
  StageSummary s;
  s.n = n;
  try {
    const GramModel& m = cache.model(n);
    s.sums = decomposition_sums(m);
    s.g0 = sqrt_enclosure(s.sums.g0_sq, precision_bits);
    s.g1 = sqrt_enclosure(s.sums.g1_sq, precision_bits);
    OpNormOptions opt;
    opt.precision_bits = precision_bits;
    opt.witnesses.push_back(RVec(m.dim(), Rational(1)));
    s.opnorm_g = op_norm(m, cache.scaled(n), stage_diagonal(make_g(), m.stage), opt);
    s.verdicts = verify_gamma_bounds(m, s.sums);
    const auto more = verify_sum_bounds(m, s.sums);
    s.verdicts.insert(s.verdicts.end(), more.begin(), more.end());
    s.available = true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) throw;
    s.available = false;
    s.reason = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return s;
}

json stage(const StageSummary& s) {
  if (!s.available)
    return {{"n", s.n}, {"status", "undecidable"}, {"reason", s.reason},
            {"seminorms", json::object()}, {"opnorms", json::object()}, {"sums", json::object()},
            {"verdicts", json::object()}};
  return {{"n", s.n},
          {"status", "ok"},
          {"seminorms",
           {{"g0_sq", rational(s.sums.g0_sq)},
            {"g1_sq", rational(s.sums.g1_sq)},
            {"g0", enclosure(s.g0)},
            {"g1", enclosure(s.g1)}}},
          {"opnorms", {{"g", norm(s.opnorm_g)}}},
          {"sums",
           {{"I0", rational(s.sums.I0)},
            {"I1", rational(s.sums.I1)},
            {"I2", rational(s.sums.I2)},
            {"I3", rational(s.sums.I3)},
            {"i1_degree", s.sums.i1_degree},
            {"identity_exact", s.sums.identity_exact()}}},
          {"verdicts", verdicts(s.verdicts)}};
}

json build(const RunConfig& cfg) {
  const GrowthSequence a = cfg.growth_sequence();
  StageCache cache(a, {cfg.dimension_cap, cfg.backend});
  json stages = json::array();
  for (std::size_t n = 1; n <= cfg.n_max; ++n) stages.push_back(stage(summarize_stage(cache, n, cfg.precision_bits)));
  json caps = {{"n_max", cfg.n_max},
               {"dimension_cap", cfg.dimension_cap},
               {"enum_degree", cfg.enum_degree},
               {"precision_bits", cfg.precision_bits}};
  return {{"meta", {{"sequence", sequence(a)}, {"caps", caps}, {"version", kVersion}}},
          {"stages", stages},
          {"conditions", conditions(check_growth_conditions(a, cfg.n_max))}};
}

const std::vector<std::string>& csv_metrics() {
  static const std::vector<std::string> m = {"g0_sq", "g1_sq", "g0", "g1", "opnorm_g", "I0", "I1", "I2", "I3",
                                             "verdict_le", "verdict_fin", "verdict_positive", "verdict_6.4",
                                             "verdict_7.2", "verdict_8.1"};
  return m;
}

namespace {

std::string cell_rational(const json& r) { return r[0].get<std::string>() + "/" + r[1].get<std::string>(); }

std::string cell_enclosure(const json& e) { return "[" + cell_rational(e["lo"]) + ";" + cell_rational(e["hi"]) + "]"; }

std::string csv_value(const json& st, const std::string& metric) {
  if (st["status"] != "ok") return "NA";
  if (metric == "g0_sq" || metric == "g1_sq") return cell_rational(st["seminorms"][metric]);
  if (metric == "g0" || metric == "g1") return cell_enclosure(st["seminorms"][metric]);
  if (metric == "opnorm_g") return cell_enclosure(st["opnorms"]["g"]["enclosure"]);
  if (metric.rfind("verdict_", 0) == 0) return st["verdicts"][metric.substr(8)]["verdict"].get<std::string>();
  return cell_rational(st["sums"][metric]);
}

}  // namespace

std::string to_csv(const json& report) {
  std::ostringstream os;
  os << "n,metric,value\n";
  for (const auto& st : report["stages"])
    for (const auto& m : csv_metrics()) os << st["n"].get<std::size_t>() << "," << m << "," << csv_value(st, m) << "\n";
  return os.str();
}

}  // namespace stagecert::report
