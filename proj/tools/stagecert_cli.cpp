#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "stagecert/config.hpp"
#include "stagecert/expr.hpp"
#include "stagecert/report.hpp"
#include "stagecert/spectral.hpp"

using namespace stagecert;
using report::json;

namespace {

constexpr int kOk = 0, kVerdictFail = 1, kUsage = 2, kUndecidable = 3;

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage:
    case ErrorKind::Domain:
    case ErrorKind::Range:
    case ErrorKind::Geometry: return kUsage;
    default: return kUndecidable;
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) fail(ErrorKind::Usage, "cannot write '" + cfg.output + "'");
  out << text;
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

// collects verdict lines and derives the exit status
struct Verdicts {
  json lines = json::array();
  bool failed = false, undecided = false;

  void add(json line, const std::string& verdict) {
    line["verdict"] = verdict;
    if (verdict == "fails") failed = true;
    if (verdict == "undecidable") undecided = true;
    lines.push_back(std::move(line));
  }
  void add(json line, Verdict v) { add(std::move(line), std::string(to_string(v))); }
  void undecidable(json line, const Error& e) {
    line["reason"] = std::string(to_string(e.kind())) + ": " + e.what();
    add(std::move(line), "undecidable");
  }
  int code() const { return failed ? kVerdictFail : (undecided ? kUndecidable : kOk); }
};

json conditions_of_group(const GrowthSequence& a, std::size_t n_max, const std::string& group) {
  ConditionReport r = check_growth_conditions(a, n_max);
  ConditionReport sub;
  for (const auto& c : r.results)
    if (c.group == group) sub.results.push_back(c);
  return report::conditions(sub);
}

/// gating registry clauses that fail, as "id@index"
json failing_conditions(const GrowthSequence& a, std::size_t n_max) {
  json out = json::array();
  for (const auto& c : check_growth_conditions(a, n_max).results)
    if (c.gating && c.verdict != Verdict::Holds) out.push_back(c.id + "@" + std::to_string(c.index));
  return out;
}

std::vector<std::size_t> stages_for(const RunConfig& cfg, std::optional<std::size_t> n) {
  if (n) return {*n};
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= cfg.n_max; ++i) out.push_back(i);
  return out;
}

void verify_nm21(StageCache& cache, std::size_t n, const RunConfig& cfg, Verdicts& v) {
  const GramModel& m = cache.model(n);
  const ScaledGram& rg = cache.scaled(n);
  OpNormOptions opt;
  opt.precision_bits = cfg.precision_bits;
  const Rational cap = Rational(1) + Rational::pow2(-cfg.precision_bits);
  auto check = [&](const std::string& name, const RVec& diag) {
    // G - DGD is congruent to K - DKD on the support
    RationalMatrix c = rg.K;
    for (std::size_t j = 0; j < rg.rank(); ++j)
      for (std::size_t k = 0; k < rg.rank(); ++k)
        c(j, k) -= diag[rg.support[j]] * rg.K(j, k) * diag[rg.support[k]];
    const Definiteness cert = certify_positive_definite(c, rg.precision).result;
    const bool contraction = cert == Definiteness::Positive;
    const NormEnclosure e = op_norm(m, rg, diag, opt);
    const bool ok = contraction && e.hi <= cap;
    const char* verdict = ok ? "holds-unconditionally" : cert == Definiteness::Unknown ? "undecidable" : "fails";
    v.add({{"check", "nm21"}, {"n", n}, {"generator", name}, {"contraction_certified", contraction},
           {"opnorm", report::enclosure(e.lo, e.hi)}},
          verdict);
  };
  for (std::size_t g = 0; g < m.gens.non_e.size(); ++g) check(m.gens.names[g], m.gens.characters[g]);
  for (long t = 0; t < m.dim(); ++t) {
    RVec diag(m.dim());
    diag[t] = m.gens.e_weight[t];
    check("e" + std::to_string(m.stage.coord(t)) + "/a", diag);
  }
}

void add_bound(Verdicts& v, std::size_t n, const BoundVerdict& b) {
  v.add({{"check", b.id}, {"n", n}, {"statement", b.statement}, {"lhs", b.lhs}, {"rhs", b.rhs}}, b.verdict);
}

const BoundVerdict& pick(const std::vector<BoundVerdict>& all, const std::string& id) {
  for (const auto& b : all)
    if (b.id == id) return b;
  fail(ErrorKind::Integrity, "missing verdict " + id);
}

int cmd_verify(const RunConfig& cfg, const std::string& lemma, std::optional<std::size_t> n_opt, long m_size,
               long j_index, long nodes, std::optional<std::size_t> k_opt) {
  static const std::vector<std::string> lemmas = {"nm21", "nm22", "le", "6.4", "7.2", "8.1", "fin", "cai", "lemma2"};
  if (std::find(lemmas.begin(), lemmas.end(), lemma) == lemmas.end())
    fail(ErrorKind::Usage, "unknown lemma '" + lemma + "'");
  Verdicts v;
  json doc = {{"lemma", lemma}};
  if (lemma == "lemma2") {
    ContourOptions co;
    co.nodes = nodes;
    const SpectralReport rep = verify_lemma2(m_size, j_index, co);
    for (const auto& c : rep.checks)
      v.add({{"check", c.id}, {"statement", c.statement}, {"detail", c.detail}}, c.pass ? "holds" : "fails");
    doc["m"] = m_size;
    doc["verdicts"] = v.lines;
    emit_json(cfg, doc);
    return v.code();
  }
  const GrowthSequence a = cfg.growth_sequence();
  StageCache cache(a, {cfg.dimension_cap, cfg.backend});
  doc["sequence"] = report::sequence(a);
  if (lemma == "cai") {
    std::vector<std::size_t> ks;
    if (k_opt)
      ks.push_back(*k_opt);
    else
      for (std::size_t k = 1; k <= a.materialized(); ++k) ks.push_back(k);
    OpNormOptions opt;
    opt.precision_bits = cfg.precision_bits;
    json details = json::array();
    for (std::size_t k : ks) {
      try {
        const CaiDefects c = cai_defects(k, cache, cfg.n_max, opt);
        for (const CaiEntry* e : {&c.norm_xk, &c.defect_g, &c.tail_k})
          v.add({{"check", e->name}, {"k", k}, {"statement", e->statement}, {"target", report::rational(e->target)},
                 {"norm", report::global_norm(e->norm)}},
                e->verdict);
      } catch (const Error& e) {
        if (exit_for(e.kind()) == kUsage) throw;
        v.undecidable({{"check", "cai"}, {"k", k}}, e);
      }
    }
    doc["verdicts"] = v.lines;
    emit_json(cfg, doc);
    return v.code();
  }
  const std::string group = lemma == "nm22" || lemma == "fin" ? "" : lemma;
  if (!group.empty()) doc["conditions"] = conditions_of_group(a, cfg.n_max, group);
  if (lemma == "le") doc["registry_not_holding"] = failing_conditions(a, cfg.n_max);
  for (std::size_t n : stages_for(cfg, n_opt)) {
    try {
      if (lemma == "nm21") {
        verify_nm21(cache, n, cfg, v);
        continue;
      }
      const GramModel& m = cache.model(n);
      const DecompositionSums s = decomposition_sums(m);
      auto bounds = verify_gamma_bounds(m, s);
      const auto more = verify_sum_bounds(m, s);
      bounds.insert(bounds.end(), more.begin(), more.end());
      if (lemma == "le") add_bound(v, n, pick(bounds, "le"));
      if (lemma == "nm22" || lemma == "fin") {
        add_bound(v, n, pick(bounds, "positive"));
        add_bound(v, n, pick(bounds, "fin"));
      }
      if (lemma == "fin") {
        OpNormOptions opt;
        opt.precision_bits = cfg.precision_bits;
        opt.witnesses.push_back(RVec(m.dim(), Rational(1)));
        const NormEnclosure e = op_norm(m, cache.scaled(n), stage_diagonal(make_g(), m.stage), opt);
        const Rational third = Rational(1, 3) - Rational::pow2(-cfg.precision_bits);
        v.add({{"check", "opnorm_g"}, {"n", n}, {"statement", "||g||_op >= 1/3 - 2^-p"},
               {"opnorm", report::norm(e)}, {"ratio_sq", report::rational(s.g1_sq / s.g0_sq)}},
              e.lo >= third ? "holds" : "fails");
      }
      if (lemma == "6.4") add_bound(v, n, pick(bounds, "6.4"));
      if (lemma == "7.2") {
        add_bound(v, n, pick(bounds, "7.2"));
        json scan = json::array();
        for (const auto& g : lemma_gk_scan(m.phi, 16))
          scan.push_back({{"l", g.l}, {"value", report::rational(g.value)},
                          {"bound_log2", report::rational(g.bound_exponent)}, {"verdict", to_string(g.verdict)}});
        doc["gk_scan_n" + std::to_string(n)] = scan;
      }
      if (lemma == "8.1") {
        add_bound(v, n, pick(bounds, "8.1"));
        v.add({{"check", "i3_closed_form"}, {"n", n}, {"statement", "I3 equals the direct diagonal formula"}},
              s.I3 == s.I3_direct ? "holds" : "fails");
      }
      if (lemma == "6.4" || lemma == "7.2" || lemma == "8.1" || lemma == "le")
        doc["sums_n" + std::to_string(n)] = {{"I0", report::rational(s.I0)}, {"I1", report::rational(s.I1)},
                                             {"I2", report::rational(s.I2)}, {"I3", report::rational(s.I3)},
                                             {"g0_sq", report::rational(s.g0_sq)}, {"g1_sq", report::rational(s.g1_sq)}};
    } catch (const Error& e) {
      if (exit_for(e.kind()) == kUsage) throw;
      v.undecidable({{"check", lemma}, {"n", n}}, e);
    }
  }
  doc["verdicts"] = v.lines;
  emit_json(cfg, doc);
  return v.code();
}

int cmd_check_seq(const RunConfig& cfg) {
  const GrowthSequence a = cfg.growth_sequence();
  const ConditionReport r = check_growth_conditions(a, cfg.n_max);
  json doc = {{"sequence", report::sequence(a)}, {"n_max", cfg.n_max}, {"conditions", report::conditions(r)}};
  const std::size_t lex_n = std::min(cfg.n_max, a.materialized());
  if (lex_n >= 1) doc["lexicographic"] = report::lexicographic(is_lexicographic(a, lex_n));
  emit_json(cfg, doc);
  return r.any_fails() ? kVerdictFail : kOk;
}

int cmd_stage(const RunConfig& cfg, std::size_t n) {
  const GrowthSequence a = cfg.growth_sequence();
  StageCache cache(a, {cfg.dimension_cap, cfg.backend});
  const GramModel& m = cache.model(n);
  const report::StageSummary s = report::summarize_stage(cache, n, cfg.precision_bits);
  json doc = report::stage(s);
  doc["block"] = {m.stage.lo, m.stage.hi};
  doc["dimension"] = m.dim();
  doc["generators"] = m.gens.names;
  doc["phi"] = report::phi(m.phi);
  doc["reconstruction_residual"] = report::rational(m.phi.reconstruction_residual());
  emit_json(cfg, doc);
  return kOk;
}

int cmd_opnorm(const RunConfig& cfg, const std::string& text, std::optional<std::size_t> n) {
  const AlgebraElement x = parse_element(text);
  const GrowthSequence a = cfg.growth_sequence();
  StageCache cache(a, {cfg.dimension_cap, cfg.backend});
  OpNormOptions opt;
  opt.precision_bits = cfg.precision_bits;
  json doc = {{"element", report::element(x)}, {"expression", text}};
  if (n) {
    const GramModel& m = cache.model(*n);
    doc["n"] = *n;
    doc["norm"] = report::norm(op_norm(m, cache.scaled(*n), stage_diagonal(x, m.stage), opt));
  } else {
    doc["global"] = report::global_norm(global_norm(x, cache, cfg.n_max, opt));
  }
  emit_json(cfg, doc);
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg, long m, long j, long nodes, const std::optional<std::string>& lambda) {
  const TruncatedModel model(m);
  json idem = json::array();
  for (long i = 1; i <= m; ++i) {
    json v = json::array();
    for (const auto& x : spectral_idempotent(model, i).exact) v.push_back(report::rational(x));
    idem.push_back({{"j", i}, {"eigenvalue", report::rational(model.eigenvalue(i))}, {"idempotent", v}});
  }
  ContourOptions co;
  co.nodes = nodes;
  const IdempotentResult c = spectral_idempotent_contour(model, j, co);
  json doc = {{"m", m},
              {"idempotents", idem},
              {"contour", {{"j", j}, {"nodes", c.nodes}, {"radius", c.radius}, {"values", c.approx},
                           {"error_estimate", c.error_estimate}}}};
  if (lambda) {
    const Rational q = Rational::parse(*lambda);
    doc["probe"] = {{"lambda", report::rational(q)}, {"distance", report::rational(approximate_point_spectrum_probe(model, q))}};
  }
  emit_json(cfg, doc);
  return kOk;
}

int cmd_mirkil(const RunConfig& cfg, long N) {
  const MirkilReport r = mirkil_verify(N);
  json checks = json::array(), res = json::array();
  for (const auto& c : r.checks) checks.push_back({{"check", c.id}, {"statement", c.statement}, {"verdict", c.pass ? "holds" : "fails"}});
  for (const auto& [k, s] : r.residuals) res.push_back({{"k", k}, {"sup_beyond_k", report::rational(s)}});
  emit_json(cfg, {{"N", N}, {"checks", checks}, {"power_residuals", res}});
  return r.all_pass() ? kOk : kVerdictFail;
}

int cmd_report(const RunConfig& cfg) {
  const json r = report::build(cfg);
  if (cfg.format == "csv")
    emit(cfg, report::to_csv(r));
  else
    emit_json(cfg, r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stage computations for a singly generated operator algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string seq, tail, output, format, backend;
  std::size_t n_max = 0;
  long dim_cap = 0, enum_degree = -1, precision = 0;
  app.add_option("--config", config_path, "flat key = value config file");
  auto* o_seq = app.add_option("--sequence", seq, "preset name or list such as 2,9");
  auto* o_tail = app.add_option("--tail", tail, "none | linear");
  auto* o_nmax = app.add_option("--n-max", n_max, "largest stage");
  auto* o_cap = app.add_option("--dim-cap", dim_cap, "stage dimension cap");
  auto* o_enum = app.add_option("--enum-degree", enum_degree, "enumeration degree");
  auto* o_prec = app.add_option("--precision", precision, "precision bits");
  auto* o_out = app.add_option("--output", output, "output path");
  auto* o_fmt = app.add_option("--format", format, "json | csv");
  auto* o_backend = app.add_option("--backend", backend, "serial | parallel");

  auto* c_check = app.add_subcommand("check-seq", "growth-condition registry");
  auto* c_stage = app.add_subcommand("stage", "dump one stage");
  std::size_t stage_n = 1;
  c_stage->add_option("--n", stage_n, "stage index");
  auto* c_verify = app.add_subcommand("verify", "verify a lemma");
  std::string lemma;
  std::size_t vn = 0, vk = 0;
  long vm = 10, vj = 3, vnodes = 64;
  c_verify->add_option("lemma", lemma, "nm21 nm22 le 6.4 7.2 8.1 fin cai lemma2")->required();
  auto* o_vn = c_verify->add_option("--n", vn, "stage index");
  auto* o_vk = c_verify->add_option("--k", vk, "cai index");
  c_verify->add_option("--m", vm, "truncation size for lemma2");
  c_verify->add_option("--j", vj, "contour target for lemma2");
  c_verify->add_option("--nodes", vnodes, "quadrature nodes for lemma2");
  auto* c_opnorm = app.add_subcommand("opnorm", "operator norm of an element");
  std::string expr;
  std::size_t on = 0;
  c_opnorm->add_option("expr", expr, "element expression, e.g. 2*e3 - g^2")->required();
  auto* o_on = c_opnorm->add_option("--n", on, "single stage");
  auto* c_spec = app.add_subcommand("spectrum", "spectral idempotents of the truncated model");
  long sm = 10, sj = 3, snodes = 64;
  std::string slambda;
  c_spec->add_option("--m", sm, "truncation size");
  c_spec->add_option("--j", sj, "contour target");
  c_spec->add_option("--nodes", snodes, "quadrature nodes");
  auto* o_lambda = c_spec->add_option("--lambda", slambda, "probe point p/q");
  auto* c_mirkil = app.add_subcommand("mirkil", "weighted-product example");
  long mN = 20;
  c_mirkil->add_option("--N", mN, "truncation size");
  auto* c_report = app.add_subcommand("report", "consolidated report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    apply_environment(cfg);
    if (*o_seq) apply_setting(cfg, "sequence", seq);
    if (*o_tail) apply_setting(cfg, "tail", tail);
    if (*o_nmax) apply_setting(cfg, "n_max", std::to_string(n_max));
    if (*o_cap) apply_setting(cfg, "dimension_cap", std::to_string(dim_cap));
    if (*o_enum) apply_setting(cfg, "enum_degree", std::to_string(enum_degree));
    if (*o_prec) apply_setting(cfg, "precision_bits", std::to_string(precision));
    if (*o_out) apply_setting(cfg, "output", output);
    if (*o_fmt) apply_setting(cfg, "format", format);
    if (*o_backend) apply_setting(cfg, "backend", backend);
    cfg.validate();

    if (*c_check) return cmd_check_seq(cfg);
    if (*c_stage) return cmd_stage(cfg, stage_n);
    if (*c_verify)
      return cmd_verify(cfg, lemma, *o_vn ? std::optional<std::size_t>(vn) : std::nullopt, vm, vj, vnodes,
                        *o_vk ? std::optional<std::size_t>(vk) : std::nullopt);
    if (*c_opnorm) return cmd_opnorm(cfg, expr, *o_on ? std::optional<std::size_t>(on) : std::nullopt);
    if (*c_spec) return cmd_spectrum(cfg, sm, sj, snodes, *o_lambda ? std::optional<std::string>(slambda) : std::nullopt);
    if (*c_mirkil) return cmd_mirkil(cfg, mN);
    if (*c_report) return cmd_report(cfg);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUndecidable;
  }
  return kUsage;
}
