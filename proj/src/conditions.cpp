#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "stagecert/sequence.hpp"

namespace stagecert {

namespace {

using Ord = Ordering3;

struct Outcome {
  Verdict verdict = Verdict::Undecidable;
  std::string witness;
  std::vector<std::size_t> reads;
  bool reads_block = false;
  long cost = 1;
};

Outcome undecidable(std::string why, std::vector<std::size_t> reads = {}) {
  Outcome o;
  o.verdict = Verdict::Undecidable;
  o.witness = std::move(why);
  o.reads = std::move(reads);
  return o;
}

// lhs < rhs (strict) or lhs <= rhs, decided exactly when both sides are exact
Verdict decide(const Magnitude& lhs, const Magnitude& rhs, bool strict) {
  const Ord o = compare(lhs, rhs);
  if (o == Ord::Less) return Verdict::Holds;
  if (o == Ord::Greater) return Verdict::Fails;
  if (lhs.is_exact() && rhs.is_exact()) return strict ? Verdict::Fails : Verdict::Holds;
  return Verdict::Undecidable;
}

Verdict decide(const Rational& lhs, const Rational& rhs, bool strict) {
  if (lhs < rhs) return Verdict::Holds;
  if (lhs > rhs) return Verdict::Fails;
  return strict ? Verdict::Fails : Verdict::Holds;
}

std::string show(const Magnitude& m) {
  if (m.is_exact()) {
    const Rational& v = *m.exact();
    if (v.bit_size() < 200) return v.str();
    return "2^" + std::to_string(LogMagnitude::of(v, 64).lo()->to_double());
  }
  const LogMagnitude l = m.log();
  std::ostringstream os;
  os << "2^[" << (l.lo() ? l.lo()->to_double() : -1.0 / 0.0) << ", "
     << (l.hi() ? l.hi()->to_double() : 1.0 / 0.0) << "]";
  return os.str();
}

std::string show(const Rational& r) {
  if (r.bit_size() < 200) return r.str();
  std::ostringstream os;
  os << "~" << r.to_double();
  return os.str();
}

Outcome compare_outcome(const Magnitude& lhs, const Magnitude& rhs, bool strict,
                        std::vector<std::size_t> reads) {
  Outcome o;
  o.reads = std::move(reads);
  o.verdict = decide(lhs, rhs, strict);
  if (o.verdict != Verdict::Holds) o.witness = "lhs=" + show(lhs) + " rhs=" + show(rhs);
  return o;
}

Outcome compare_outcome(const Rational& lhs, const Rational& rhs, bool strict,
                        std::vector<std::size_t> reads) {
  Outcome o;
  o.reads = std::move(reads);
  o.verdict = decide(lhs, rhs, strict);
  if (o.verdict != Verdict::Holds) o.witness = "lhs=" + show(lhs) + " rhs=" + show(rhs);
  return o;
}

Magnitude M(long v) { return Magnitude(Rational(v)); }

std::vector<std::size_t> upto(std::size_t n) {
  std::vector<std::size_t> r;
  for (std::size_t i = 1; i <= n; ++i) r.push_back(i);
  return r;
}

bool exact_upto(const GrowthSequence& a, std::size_t n) { return n <= a.materialized(); }

// upper and lower bounds on a_i^-p as rationals; inexact entries are clamped at 2^4096
constexpr long kClamp = 4096;

Rational inv_upper(const GrowthSequence& a, std::size_t i, long p) {
  if (a.is_exact(i)) return Rational(a.at(i)).pow(-p);
  const LogMagnitude l = a.log2_of(i);
  const BigInt fl = l.lo()->floor();
  const long e = fl > kClamp ? kClamp : fl.get_si();
  return Rational::pow2(-p * e);
}

// upper bound on 2^-(x) for a positive magnitude x
Rational pow2_neg_upper(const Magnitude& x) {
  if (x.is_exact()) {
    const BigInt fl = x.exact()->floor();
    return Rational::pow2(-(fl > kClamp ? kClamp : fl.get_si()));
  }
  auto lo = x.lower();
  if (!lo) return Rational(1);
  const BigInt fl = lo->floor();
  return Rational::pow2(-(fl > kClamp ? kClamp : fl.get_si()));
}

using Eval = std::function<std::optional<Outcome>(const GrowthSequence&, std::size_t)>;

struct Entry {
  ConditionInfo info;
  Eval eval;  // nullopt: not applicable at this index
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&](std::string id, std::string group, std::string statement, bool derived,
                   bool gating, Eval e) {
      t.push_back({{std::move(id), std::move(group), std::move(statement), derived, gating},
                   std::move(e)});
    };

    add("a_at_least_n", "general", "a_n >= n", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          return compare_outcome(M(static_cast<long>(n)), a.magnitude(n), false, {n});
        });

    add("a_at_least_n_plus_1", "8.1", "a_n >= n + 1", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          auto o = compare_outcome(M(static_cast<long>(n + 1)), a.magnitude(n), false, {n});
          if (o.verdict == Verdict::Fails) o.witness = "n=" + std::to_string(n) + " " + o.witness;
          return o;
        });

    add("lexicographic", "general",
        "sign(sum t_i a_i) = sign(t_r) for |t_i| <= 2 a_i, r = max{i : t_i != 0}", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          const LexResult lr = is_lexicographic(a, n);
          Outcome o;
          o.reads = upto(n);
          o.verdict = lr.verdict;
          if (lr.verdict == Verdict::Fails) {
            std::ostringstream os;
            os << "t=(";
            for (std::size_t i = 0; i < lr.witness.size(); ++i) os << (i ? "," : "") << lr.witness[i];
            os << ")";
            o.witness = os.str();
          } else if (lr.verdict == Verdict::Undecidable) {
            o.witness = "log bounds overlap";
          }
          o.cost = lr.method == "gap" ? static_cast<long>(n) : static_cast<long>(n) * 1000;
          return o;
        });

    add("tower", "8.1", "a_k^2 > 1 + 2^(2 + a_{k-1}^2)", false, true,
        [](const GrowthSequence& a, std::size_t k) -> std::optional<Outcome> {
          if (k < 2 || !a.is_known(k)) return std::nullopt;
          const Magnitude lhs = a.magnitude(k).pow(2);
          const Magnitude rhs = M(1) + Magnitude::exp2(M(2) + a.magnitude(k - 1).pow(2));
          return compare_outcome(rhs, lhs, true, {k - 1, k});
        });

    add("nm21_sum_literal", "nm21",
        "2^(-1-a_n) + sum_{a_n<i<=a_{n+1}} 1/a_i + sum_{j<=n} (j+1)(2^(a_j(a_j-a_n)) + 2^(-1-a_n)) < 1",
        false, false, [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          Outcome o;
          o.reads = {n};
          // the j = n summand alone is (n+1)(1 + 2^(-1-a_n)) > 1
          o.verdict = Verdict::Fails;
          o.witness = "term j=n equals " + std::to_string(n + 1) + "*(1 + 2^(-1-a_n)) >= 1";
          return o;
        });

    add("nm21_radius", "nm21",
        "every stage generator has spectral radius < 1: j 2^(-1-a_n) < 1 for j <= n and a_i >= 2 on the block",
        true, true, [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          // u_j <= j/(j+1), gamma_1 <= 2^(-1-a_n), v_j < j 2^(-1-a_n), a_i >= i > a_n >= 1
          const Magnitude lhs = M(static_cast<long>(n));
          const Magnitude rhs = Magnitude::exp2(M(1) + a.magnitude(n));
          return compare_outcome(lhs, rhs, true, {n});
        });

    add("le_factor", "le",
        "sum_{i<a_n} (n/(n+1))^(2i) (1 - i/a_n)^2 >= (1 - 2^-(n+1)) (n+1)^2/(2n+1)", true, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          if (!a.is_exact(n)) return undecidable("a_n not materialized", {n});
          const LeFactor f = le_factor(n, a.at(n));
          const long nn = static_cast<long>(n);
          const Rational target = (Rational(1) - Rational::pow2(-(nn + 1))) *
                                  Rational(BigInt((nn + 1) * (nn + 1)), BigInt(2 * nn + 1));
          Outcome o = compare_outcome(target, f.value, false, {n});
          if (o.verdict == Verdict::Fails && !f.exact) o = undecidable("partial sum below target", {n});
          o.cost = f.exact ? a.at(n).get_si() : 512;
          return o;
        });

    add("le_product", "le", "prod_{j<=n} sum_{i<a_j} (j/(j+1))^(2i)(1-i/a_j)^2 >= 1/2 prod (j+1)^2/(2j+1)",
        false, true, [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          if (!exact_upto(a, n)) return undecidable("entry not materialized", upto(n));
          Rational p = 1;
          bool exact = true;
          long cost = 0;
          for (std::size_t j = 1; j <= n; ++j) {
            const LeFactor f = le_factor(j, a.at(j));
            p *= f.value;
            exact = exact && f.exact;
            cost += f.exact ? a.at(j).get_si() : 512;
          }
          Outcome o = compare_outcome(le_product_target(n) / 2, p, false, upto(n));
          if (o.verdict == Verdict::Fails && !exact) o = undecidable("partial sums below target", upto(n));
          o.cost = cost;
          return o;
        });

    add("i1_log", "6.4", "12 (1 + log2 n) < a_n, i.e. 2^12 n^12 < 2^a_n", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          const Magnitude lhs = Magnitude(Rational(4096) * Rational(static_cast<long>(n)).pow(12));
          return compare_outcome(lhs, Magnitude::exp2(a.magnitude(n)), true, {n});
        });

    add("i1_square_sum", "6.4", "sum_{r<=n} (r/a_r)^2 < 1", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          Rational s;
          for (std::size_t r = 1; r <= n; ++r)
            s += Rational(static_cast<long>(r * r)) * inv_upper(a, r, 2);
          Outcome o = compare_outcome(s, Rational(1), true, upto(n));
          if (o.verdict == Verdict::Fails && !exact_upto(a, n)) o = undecidable("upper bound >= 1", upto(n));
          return o;
        });

    add("i1_ratio", "6.4", "a_n > 2 a_{n-1} xi_{n-1}", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (n < 2 || !a.is_known(n)) return std::nullopt;
          const Magnitude rhs = M(2) * a.magnitude(n - 1) * a.xi_magnitude(n - 1);
          return compare_outcome(rhs, a.magnitude(n), true, upto(n));
        });

    add("i1_m0", "6.4", "xi_{n-1} < a_n / 4", true, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (n < 2 || !a.is_known(n)) return std::nullopt;
          return compare_outcome(M(4) * a.xi_magnitude(n - 1), a.magnitude(n), true, upto(n));
        });

    add("i1_support", "6.4", "1 + 2 xi_{n-1} < a_n", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (n < 2 || !a.is_known(n)) return std::nullopt;
          return compare_outcome(M(1) + M(2) * a.xi_magnitude(n - 1), a.magnitude(n), true, upto(n));
        });

    add("i1_xi", "6.4", "1 + a_n + xi_n <= 2 a_n^2", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          const Magnitude lhs = M(1) + a.magnitude(n) + a.xi_magnitude(n);
          return compare_outcome(lhs, M(2) * a.magnitude(n).pow(2), false, upto(n));
        });

    add("i1_upper", "6.4", "(2 a_n^2 + 1) a_n + a_n / (2 a_{n-1}) < a_{n+1}", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          const Magnitude an = a.magnitude(n);
          const Magnitude lhs = (M(2) * an.pow(2) + M(1)) * an + an / (M(2) * a.magnitude(n - 1));
          return compare_outcome(lhs, a.magnitude(n + 1), true, {n - 1, n, n + 1});
        });

    add("i1_next", "6.4", "1 + xi_n < a_{n+1}", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          return compare_outcome(M(1) + a.xi_magnitude(n), a.magnitude(n + 1), true, upto(n + 1));
        });

    add("i1_support_next", "6.4", "2 a_n^2 a_{n-1} <= a_{n+1}", true, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          const Magnitude lhs = M(2) * a.magnitude(n).pow(2) * a.magnitude(n - 1);
          return compare_outcome(lhs, a.magnitude(n + 1), false, {n - 1, n, n + 1});
        });

    add("i1_eta", "6.4", "(2^(1 + xi_n) xi_n)^3 <= a_{n+1}", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          const Magnitude xi = a.xi_magnitude(n);
          const Magnitude lhs = (Magnitude::exp2(M(1) + xi) * xi).pow(3);
          return compare_outcome(lhs, a.magnitude(n + 1), false, upto(n + 1));
        });

    add("i1_eta_sum", "6.4",
        "(n/a_n)^2 + (1 + xi_{n-1}) n^(2 + 2 xi_{n-1}) a_n^(-4/3) <= 1/a_n", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (n < 2 || !a.is_known(n)) return std::nullopt;
          // multiply by a_n^2 and cube: (1+xi)^3 n^(6+6xi) a_n^2 <= (a_n - n^2)^3
          const Rational nn(static_cast<long>(n));
          const Magnitude xi = a.xi_magnitude(n - 1);
          if (!xi.is_exact()) return undecidable("xi not exact", upto(n));
          const BigInt xv = xi.exact()->num();
          if (xv > 100000) return undecidable("xi too large to expand", upto(n));
          const Magnitude npow = Magnitude(nn).pow(6 + 6 * xv.get_si());
          const Magnitude lhs = (M(1) + xi).pow(3) * npow * a.magnitude(n).pow(2);
          if (a.is_exact(n)) {
            const Rational gap = Rational(a.at(n)) - nn * nn;
            if (gap.sign() <= 0) {
              Outcome o;
              o.verdict = Verdict::Fails;
              o.witness = "a_n <= n^2";
              o.reads = upto(n);
              return o;
            }
            return compare_outcome(lhs, Magnitude(gap).pow(3), false, upto(n));
          }
          // a_n - n^2 >= a_n / 2 once a_n >= 2 n^2
          if (compare(a.magnitude(n), Magnitude(nn * nn * 2)) != Ord::Greater)
            return undecidable("a_n not certified >= 2 n^2", upto(n));
          const Magnitude rhs = (a.magnitude(n) / M(2)).pow(3);
          Outcome o = compare_outcome(lhs, rhs, false, upto(n));
          if (o.verdict == Verdict::Fails) o = undecidable("bound too weak", upto(n));
          return o;
        });

    add("i1_count", "6.4",
        "((t+1) a_n)^(6 a_n) ((n+1)^2/(2n+1))^3 <= 2^(a_n^2 max(1,t)) for t = 1, 2, and a_n >= 3",
        false, true, [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          const long nn = static_cast<long>(n);
          const Magnitude c3 = Magnitude(Rational(BigInt((nn + 1) * (nn + 1)), BigInt(2 * nn + 1)).pow(3));
          const Magnitude an = a.magnitude(n);
          if (compare(an, M(3)) == Ord::Less) {
            Outcome o;
            o.verdict = Verdict::Fails;
            o.witness = "a_n < 3";
            o.reads = {n};
            return o;
          }
          Outcome worst;
          worst.verdict = Verdict::Holds;
          worst.reads = {n};
          for (long t : {1L, 2L}) {
            Magnitude lhs;
            if (an.is_exact() && an.exact()->num() <= 20000) {
              lhs = Magnitude(Rational(BigInt(t + 1)) * *an.exact()).pow(6 * an.exact()->num().get_si()) * c3;
            } else {
              // log2 lhs = 6 a log2((t+1) a) + log2 c3
              const LogMagnitude base = (Magnitude(Rational(t + 1)) * an).log();
              const LogMagnitude exp_a = (M(6) * an).log();
              std::optional<Rational> lo, hi;
              auto ea_lo = exp_a.value_lower(), ea_hi = exp_a.value_upper();
              if (base.lo() && ea_lo) lo = *base.lo() * *ea_lo;
              if (base.hi() && ea_hi) hi = *base.hi() * *ea_hi;
              if (!hi && an.is_exact()) {
                // 6a log2((t+1)a) < 6a (log2 a + 2) in exact integers
                const BigInt av = an.exact()->num();
                hi = Rational(6 * av * (BigInt(bit_length(av)) + 2));
              }
              lhs = Magnitude(LogMagnitude(lo, hi)) * c3;
            }
            const Magnitude rhs = Magnitude::exp2(an.pow(2) * M(t));
            const Verdict v = decide(lhs, rhs, false);
            if (v == Verdict::Fails) {
              worst.verdict = Verdict::Fails;
              worst.witness = "t=" + std::to_string(t) + " lhs=" + show(lhs) + " rhs=" + show(rhs);
              break;
            }
            if (v == Verdict::Undecidable) {
              worst.verdict = Verdict::Undecidable;
              worst.witness = "t=" + std::to_string(t) + " overlapping bounds";
            }
          }
          return worst;
        });

    add("i1_final_sum", "6.4",
        "sum_{r<=n} sum_{t>=0} 2^(1 - a_r^2 max(1/3, t/3)) <= 1", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          // per r: 4 y + 2 y^2 / (1 - y) with y = 2^(-a_r^2/3), increasing in y
          Rational hi_sum, lo_sum;
          bool lo_valid = true;
          for (std::size_t r = 1; r <= n; ++r) {
            const Magnitude a2 = a.magnitude(r).pow(2) / M(3);
            const Rational yh = pow2_neg_upper(a2);
            hi_sum += Rational(4) * yh + Rational(2) * yh * yh / (Rational(1) - yh);
            if (a2.is_exact() && a2.exact()->ceil() <= kClamp) {
              const Rational yl = Rational::pow2(-a2.exact()->ceil().get_si());
              lo_sum += Rational(4) * yl + Rational(2) * yl * yl / (Rational(1) - yl);
            } else {
              lo_valid = false;
            }
          }
          Outcome o;
          o.reads = upto(n);
          if (hi_sum <= 1) {
            o.verdict = Verdict::Holds;
          } else if (lo_valid && lo_sum > 1) {
            o.verdict = Verdict::Fails;
            o.witness = "sum >= " + show(lo_sum);
          } else {
            o.verdict = Verdict::Undecidable;
            o.witness = "dyadic bracket straddles 1";
          }
          return o;
        });

    add("i1_product", "6.4", "prod_{j<=n} (1 + 1/a_j) <= 2", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          Rational p = 1;
          for (std::size_t j = 1; j <= n; ++j) p *= Rational(1) + inv_upper(a, j, 1);
          Outcome o = compare_outcome(p, Rational(2), false, upto(n));
          if (o.verdict == Verdict::Fails && !exact_upto(a, n)) o = undecidable("upper bound > 2", upto(n));
          return o;
        });

    add("lemma61_gap", "6.4", "(1 + a_n)^2 a_{n+1} < (a_{n+1} - a_n)^2", true, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          if (!a.is_exact(n + 1)) return undecidable("a_{n+1} not materialized", {n, n + 1});
          const BigInt lhs = (1 + a.at(n)) * (1 + a.at(n)) * a.at(n + 1);
          const BigInt d = a.at(n + 1) - a.at(n);
          return compare_outcome(Rational(lhs), Rational(d * d), true, {n, n + 1});
        });

    add("gk_room", "7.2", "1 + xi_n < a_{n+1} - a_n", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          if (!a.is_exact(n + 1)) {
            // a_{n+1} - a_n > a_{n+1} / 2 when a_{n+1} > 2 a_n
            if (compare(a.magnitude(n + 1), M(2) * a.magnitude(n)) != Ord::Greater)
              return undecidable("a_{n+1} not certified > 2 a_n", upto(n + 1));
            Outcome o = compare_outcome(M(2) * (M(1) + a.xi_magnitude(n)), a.magnitude(n + 1), true,
                                        upto(n + 1));
            if (o.verdict == Verdict::Fails) o = undecidable("bound too weak", upto(n + 1));
            return o;
          }
          const BigInt d = a.at(n + 1) - a.at(n);
          return compare_outcome(Rational(1 + a.xi(n)), Rational(d), true, upto(n + 1));
        });

    add("gk_exponent", "7.2",
        "3[(1 + xi_n)(2 + a_n) - (d - xi_n - 3)(d - xi_n - 2)/2 + 1] <= -a_{n+1}^2, d = a_{n+1} - a_n",
        false, true, [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          if (!a.is_exact(n + 1)) return undecidable("a_{n+1} not materialized", upto(n + 1));
          const BigInt xi = a.xi(n);
          const BigInt d = a.at(n + 1) - a.at(n);
          const Rational inner = Rational((1 + xi) * (2 + a.at(n))) -
                                 Rational((d - xi - 3) * (d - xi - 2)) / 2 + 1;
          const Rational lhs = Rational(3) * inner;
          const Rational rhs = -Rational(a.at(n + 1) * a.at(n + 1));
          return compare_outcome(lhs, rhs, false, upto(n + 1));
        });

    add("eps_prime", "7.2", "4 n^2 <= 2^a_n", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          const long nn = static_cast<long>(n);
          return compare_outcome(M(4 * nn * nn), Magnitude::exp2(a.magnitude(n)), false, {n});
        });

    add("i2_support", "7.2", "a_{n+1} > (1 + xi_n)^2", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          return compare_outcome((M(1) + a.xi_magnitude(n)).pow(2), a.magnitude(n + 1), true,
                                 upto(n + 1));
        });

    add("i2_tail", "7.2",
        "C(D+k-1, k-1) q^D (1-q)^-k <= 1, k = 2n, D = ceil(sqrt a_{n+1}), q = 2^-min(2 a_1, a_n)",
        false, true, [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          if (!a.is_exact(n + 1) || !a.is_exact(n)) return undecidable("entry not materialized", upto(n + 1));
          const BigInt an1 = a.at(n + 1);
          BigInt D = isqrt(an1);
          if (D * D < an1) D += 1;
          const unsigned long k = 2 * n;
          BigInt e = std::min(BigInt(2 * a.at(1)), a.at(n));
          // (1-q)^-k is decreasing in e; clamp e for the exact factor
          const long ec = e > 64 ? 64 : e.get_si();
          const Rational geo = (Rational(1) - Rational::pow2(-ec)).pow(-static_cast<long>(k));
          BigInt binom;
          if (D > BigInt(1) << 40 && k - 1 > 4) return undecidable("binomial too large", upto(n + 1));
          const BigInt top = D + BigInt(k - 1);
          mpz_bin_ui(binom.get_mpz_t(), top.get_mpz_t(), k - 1);
          const Magnitude lhs = Magnitude(Rational(binom) * geo) * Magnitude::exp2(-Rational(e * D));
          return compare_outcome(lhs, M(1), false, upto(n + 1));
        });

    add("i3_product", "8.1", "prod_{j<=n} (1 - 2^(-2 a_j))^-1 (1 - 2^(-a_j))^-1 < 2", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n)) return std::nullopt;
          Rational p = 1;
          bool exact = true;
          for (std::size_t j = 1; j <= n; ++j) {
            long e;
            if (a.is_exact(j) && a.at(j) <= kClamp) {
              e = a.at(j).get_si();
            } else {
              e = kClamp;  // factor is decreasing in a_j
              exact = false;
            }
            p *= (Rational(1) - Rational::pow2(-2 * e)).inverse() * (Rational(1) - Rational::pow2(-e)).inverse();
          }
          Outcome o = compare_outcome(p, Rational(2), true, upto(n));
          if (o.verdict == Verdict::Fails && !exact) o = undecidable("upper bound >= 2", upto(n));
          return o;
        });

    add("i3_coeff", "8.1", "2 (1 + a_n) <= a_{n+1}", false, true,
        [](const GrowthSequence& a, std::size_t n) -> std::optional<Outcome> {
          if (!a.is_known(n + 1)) return std::nullopt;
          return compare_outcome(M(2) * (M(1) + a.magnitude(n)), a.magnitude(n + 1), false, {n, n + 1});
        });

    return t;
  }();
  return table;
}

}  // namespace

const std::vector<ConditionInfo>& condition_registry() {
  static const std::vector<ConditionInfo> infos = [] {
    std::vector<ConditionInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool ConditionReport::any_fails() const {
  return std::any_of(results.begin(), results.end(),
                     [](const auto& r) { return r.gating && r.verdict == Verdict::Fails; });
}

bool ConditionReport::any_undecidable() const {
  return std::any_of(results.begin(), results.end(),
                     [](const auto& r) { return r.gating && r.verdict == Verdict::Undecidable; });
}

std::vector<const ConditionResult*> ConditionReport::find(const std::string& id) const {
  std::vector<const ConditionResult*> out;
  for (const auto& r : results)
    if (r.id == id) out.push_back(&r);
  return out;
}

ConditionReport check_growth_conditions(const GrowthSequence& a, std::size_t n_max) {
  ConditionReport rep;
  const auto& table = entries();
  for (const auto& e : table) {
    const bool is_tower = e.info.id == "tower";
    for (std::size_t n = 1; n <= n_max; ++n) {
      const std::size_t idx = is_tower ? n + 1 : n;
      std::optional<Outcome> o;
      try {
        o = e.eval(a, idx);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::Unavailable) continue;
        o = undecidable(std::string(to_string(err.kind())) + ": " + err.what());
      }
      if (!o) continue;
      ConditionResult r;
      r.id = e.info.id;
      r.group = e.info.group;
      r.statement = e.info.statement;
      r.index = idx;
      r.verdict = o->verdict;
      r.witness = o->witness;
      r.reads = o->reads;
      std::sort(r.reads.begin(), r.reads.end());
      r.reads.erase(std::unique(r.reads.begin(), r.reads.end()), r.reads.end());
      r.reads.erase(std::remove(r.reads.begin(), r.reads.end(), 0u), r.reads.end());
      r.reads_block = o->reads_block;
      r.derived = e.info.derived;
      r.gating = e.info.gating;
      r.cost = o->cost;
      rep.results.push_back(std::move(r));
    }
  }
  return rep;
}

}  // namespace stagecert
