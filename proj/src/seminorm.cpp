#include "stagecert/seminorm.hpp"

#include <cmath>
#include <limits>

namespace stagecert {

namespace {

Rational sum_entries(const RationalMatrix& m) {
  RVec terms;
  terms.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) terms.push_back(m(i, j));
  return balanced_sum(std::move(terms));
}

BoundVerdict make_bound(std::string id, std::string statement, bool holds, const Rational& lhs,
                        const Rational& rhs) {
  return {std::move(id), std::move(statement), holds ? Verdict::Holds : Verdict::Fails, lhs.str(), rhs.str()};
}

}  // namespace

GramModel build_gram_model(const GrowthSequence& a, std::size_t n, const StageOptions& opt) {
  const Stage s = make_stage(a, n, opt.dimension_cap);
  GeneratorSet gens = make_generators(a, s);
  if (!gens.has_e_weights())
    fail(ErrorKind::Unavailable, "e-generator weights a_j for the block of stage " + std::to_string(n) +
                                     " are not available under tail policy " + to_string(a.tail()));
  for (std::size_t g = 0; g < gens.characters.size(); ++g)
    for (const auto& c : gens.characters[g])
      if (c.abs() >= 1)
        fail(ErrorKind::Divergence, "generator " + gens.names[g] + " has a character value " + c.str() +
                                        " of modulus >= 1; the defining sum diverges");
  for (const auto& w : gens.e_weight)
    if (w.abs() >= 1) fail(ErrorKind::Divergence, "e-generator weight " + w.str() + " has modulus >= 1");

  PhiFunctional phi(a, s, opt.backend);
  kernels::KernelInput in;
  in.lambda = phi.e_coeffs();
  in.chars = gens.characters;
  in.e_diag.resize(s.dim());
  for (long t = 0; t < s.dim(); ++t) {
    const Rational w2 = gens.e_weight[t] * gens.e_weight[t];
    in.e_diag[t] = Rational(1) / (Rational(1) - w2);
  }
  RationalMatrix G = kernels::gram(in, opt.backend);
  return GramModel{s, std::move(gens), std::move(phi), std::move(in), std::move(G), opt.backend};
}

Rational seminorm_sq(const GramModel& m, const RVec& coords) {
  if (static_cast<long>(coords.size()) != m.dim()) fail(ErrorKind::Domain, "coordinate vector has wrong length");
  return quadratic(m.G, coords);
}

Rational seminorm_sq(const GramModel& m, const GammaVector& x) { return seminorm_sq(m, x.coords()); }

Rational inner(const GramModel& m, const RVec& x, const RVec& y) { return bilinear(m.G, x, y); }

EnumResult seminorm_enum(const GramModel& m, const RVec& coords, long max_degree) {
  if (max_degree < 0) fail(ErrorKind::Domain, "enumeration degree must be >= 0");
  EnumResult r;
  RVec by_degree = kernels::enumerate_by_degree(m.input, coords, max_degree, m.backend);
  r.partials.resize(by_degree.size());
  Rational acc;
  for (std::size_t k = 0; k < by_degree.size(); ++k) r.partials[k] = acc += by_degree[k];
  r.partial = acc;
  const Rational full = seminorm_sq(m, coords);
  if (full == r.partial) {
    r.converged_digits = std::numeric_limits<double>::infinity();
  } else {
    const double rel = ((full - r.partial) / full).to_double();
    r.converged_digits = rel > 0 ? -std::log10(rel) : std::numeric_limits<double>::infinity();
  }
  return r;
}

EnumResult seminorm_enum(const GramModel& m, const GammaVector& x, long max_degree) {
  return seminorm_enum(m, x.coords(), max_degree);
}

Rational seminorm_truncated(const GramModel& m, const RVec& coords, long degree) {
  return quadratic(kernels::gram_truncated(m.input, degree, m.backend), coords);
}

DecompositionSums decomposition_sums(const GramModel& m) {
  DecompositionSums s;
  const long d = m.dim();
  RVec ones(d, Rational(1)), g1(d);
  for (long t = 0; t < d; ++t) g1[t] = Rational::pow2(-m.stage.coord(t));
  s.g0_sq = quadratic(m.G, ones);
  s.g1_sq = quadratic(m.G, g1);

  kernels::KernelInput no_g1 = m.input;
  no_g1.chars.erase(no_g1.chars.begin());  // gamma1 is always the first generator
  s.I0 = sum_entries(kernels::gram(no_g1, m.backend));

  kernels::KernelInput no_e = no_g1;
  no_e.e_diag.clear();
  const Rational no_e_total = sum_entries(kernels::gram(no_e, m.backend));
  s.I3 = s.I0 - no_e_total;

  const long hi = m.stage.hi;
  long D = 0;
  while ((D + 1) * (D + 1) < hi) ++D;
  s.i1_degree = D;
  s.I1 = sum_entries(kernels::gram_truncated(no_e, D, m.backend));
  s.I2 = no_e_total - s.I1;

  RVec direct;
  for (long t = 0; t < d; ++t) {
    const Rational& l = m.input.lambda[t];
    if (l.is_zero()) continue;
    Rational v = l * l * (m.input.e_diag[t] - 1);
    for (const auto& c : no_g1.chars) v /= Rational(1) - c[t] * c[t];
    direct.push_back(std::move(v));
  }
  s.I3_direct = balanced_sum(std::move(direct));
  return s;
}

std::vector<BoundVerdict> verify_gamma_bounds(const GramModel& m, const DecompositionSums& s) {
  const Rational target = le_product_target(m.stage.n) / 2;
  return {
      make_bound("le", "g1_sq >= 1/2 prod_{j<=n} (j+1)^2/(2j+1)", s.g1_sq >= target, s.g1_sq, target),
      make_bound("fin", "g0_sq <= 9 g1_sq", s.g0_sq <= 9 * s.g1_sq, s.g0_sq, 9 * s.g1_sq),
      make_bound("positive", "g0_sq > 0", s.g0_sq > 0, s.g0_sq, Rational(0)),
  };
}

std::vector<BoundVerdict> verify_sum_bounds(const GramModel& m, const DecompositionSums& s) {
  const Rational pi2 = 2 * le_product_target(m.stage.n);
  const long hi = m.stage.hi;
  const Rational i2_cube = s.I2.pow(3);
  const Rational i2_rhs = Rational::pow2(-2 * hi * hi);
  return {
      make_bound("6.4", "I1 < 2 prod_{j<=n} (j+1)^2/(2j+1)", s.I1 < pi2, s.I1, pi2),
      make_bound("7.2", "I2^3 <= 2^(-2 a_{n+1}^2)", i2_cube <= i2_rhs, i2_cube, i2_rhs),
      make_bound("8.1", "I3 <= 1", s.I3 <= 1, s.I3, Rational(1)),
  };
}

}  // namespace stagecert
