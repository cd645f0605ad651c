#include "stagecert/sequence.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stagecert {

TailPolicy parse_tail_policy(const std::string& s) {
  if (s == "none") return TailPolicy::None;
  if (s == "linear") return TailPolicy::Linear;
  fail(ErrorKind::Usage, "unknown tail policy '" + s + "' (expected none|linear)");
}

const char* to_string(TailPolicy t) { return t == TailPolicy::None ? "none" : "linear"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Undecidable: return "undecidable";
  }
  return "undecidable";
}

GrowthSequence::GrowthSequence(std::vector<BigInt> exact, std::vector<LogMagnitude> log_tail,
                               TailPolicy tail, std::string name)
    : exact_(std::move(exact)), log_tail_(std::move(log_tail)), tail_(tail), name_(std::move(name)) {
  if (exact_.empty()) fail(ErrorKind::Usage, "sequence needs at least one explicit entry");
  if (exact_.front() < 1) fail(ErrorKind::Usage, "sequence entries must be positive");
  for (std::size_t i = 1; i < exact_.size(); ++i)
    if (exact_[i] <= exact_[i - 1])
      fail(ErrorKind::Usage, "sequence must be strictly increasing (a_" + std::to_string(i + 1) +
                                 " <= a_" + std::to_string(i) + ")");
  for (const auto& l : log_tail_)
    if (!l.lo()) fail(ErrorKind::Usage, "log-only sequence entries need a lower bound");
  if (name_.empty()) name_ = "custom";
}

namespace {

BigInt p13_second_entry() {
  // smallest integer whose square exceeds 1 + 2^171
  BigInt t = 1;
  mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), 171);
  t += 1;
  BigInt s = isqrt(t);
  while (s * s <= t) s += 1;
  return s;
}

}  // namespace

GrowthSequence GrowthSequence::preset(const std::string& name) {
  if (name == "desk-small") return GrowthSequence({2, 9}, {}, TailPolicy::Linear, name);
  if (name == "desk-medium") return GrowthSequence({3, 40}, {}, TailPolicy::Linear, name);
  if (name == "desk-two") return GrowthSequence({2, 9, 180}, {}, TailPolicy::Linear, name);
  if (name == "paper-13") {
    const BigInt a2 = p13_second_entry();
    // log2 a_3 just above (2 + a_2^2) / 2, so that a_3^2 > 1 + 2^(2 + a_2^2)
    const Rational lo = Rational(BigInt(2) + a2 * a2) / 2 + Rational::pow2(-64);
    const Rational hi = lo + Rational::pow2(-64);
    return GrowthSequence({13, a2}, {LogMagnitude(lo, hi)}, TailPolicy::None, name);
  }
  fail(ErrorKind::Usage, "unknown preset '" + name + "'");
}

std::vector<std::string> GrowthSequence::preset_names() {
  return {"desk-small", "desk-medium", "desk-two", "paper-13"};
}

const BigInt& GrowthSequence::at(std::size_t i) const {
  static const BigInt one = 1;
  if (i == 0) return one;
  if (i > exact_.size())
    fail(ErrorKind::Unavailable, "a_" + std::to_string(i) + " is not materialized");
  return exact_[i - 1];
}

Magnitude GrowthSequence::magnitude(std::size_t i) const {
  if (i <= exact_.size()) return Magnitude(Rational(at(i)));
  if (i <= known()) {
    const LogMagnitude& l = log_tail_[i - exact_.size() - 1];
    return Magnitude(l);
  }
  fail(ErrorKind::Unavailable, "a_" + std::to_string(i) + " is unknown");
}

LogMagnitude GrowthSequence::log2_of(std::size_t i) const { return magnitude(i).log(); }

std::optional<BigInt> GrowthSequence::weight(const BigInt& i) const {
  if (i < 1) return std::nullopt;
  if (i <= BigInt(static_cast<unsigned long>(exact_.size()))) return exact_[i.get_ui() - 1];
  if (!log_tail_.empty() || tail_ == TailPolicy::None) return std::nullopt;
  return exact_.back() + (i - BigInt(static_cast<unsigned long>(exact_.size())));
}

BigInt GrowthSequence::xi(std::size_t n) const {
  BigInt s = 0;
  for (std::size_t i = 1; i <= n; ++i) s += at(i) * at(i);
  return s;
}

Magnitude GrowthSequence::xi_magnitude(std::size_t n) const {
  if (n == 0) fail(ErrorKind::Domain, "xi_0 = 0 is not a positive magnitude");
  if (n <= exact_.size()) return Magnitude(Rational(xi(n)));
  Magnitude s = magnitude(1).pow(2);
  for (std::size_t i = 2; i <= n; ++i) s = s + magnitude(i).pow(2);
  return s;
}

std::string GrowthSequence::describe() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < exact_.size(); ++i) os << (i ? "," : "") << exact_[i].get_str();
  for (std::size_t i = 0; i < log_tail_.size(); ++i) os << ",2^[" << log_tail_[i].lo()->to_double() << "]";
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- Lambda_n

LambdaSet lambda_set(const GrowthSequence& a, std::size_t n, std::size_t cap) {
  if (n > a.materialized())
    fail(ErrorKind::Unavailable, "Lambda_" + std::to_string(n) + " needs a_" + std::to_string(n));
  LambdaSet out;
  out.n = n;
  out.xi = a.xi(n);
  out.tuple_count = 1;
  for (std::size_t i = 1; i <= n; ++i) out.tuple_count *= a.at(i) + 1;
  if (out.tuple_count > BigInt(static_cast<unsigned long>(cap)))
    fail(ErrorKind::Resource, "Lambda_" + std::to_string(n) + " has too many tuples");
  std::set<BigInt> sums{BigInt(0)};
  for (std::size_t i = 1; i <= n; ++i) {
    std::set<BigInt> next;
    const BigInt& ai = a.at(i);
    for (const auto& s : sums)
      for (BigInt t = 0; t <= ai; ++t) next.insert(s + t * ai);
    sums.swap(next);
  }
  out.elements.assign(sums.begin(), sums.end());
  return out;
}

std::optional<std::vector<BigInt>> lambda_decompose(const GrowthSequence& a, std::size_t n,
                                                    const BigInt& m) {
  if (m < 0) return std::nullopt;
  std::vector<BigInt> t(n);
  BigInt rem = m;
  for (std::size_t i = n; i >= 1; --i) {
    const BigInt& ai = a.at(i);
    BigInt q = rem / ai;
    if (q > ai) q = ai;
    t[i - 1] = q;
    rem -= q * ai;
  }
  if (rem != 0) return std::nullopt;
  return t;
}

// ---------------------------------------------------------------- lexicographic

Verdict lexicographic_by_gap(const GrowthSequence& a, std::size_t n) {
  bool undecided = false;
  for (std::size_t r = 2; r <= n; ++r) {
    if (!a.is_known(r)) return Verdict::Undecidable;
    const Magnitude lhs = a.magnitude(r);
    const Magnitude rhs = Magnitude(Rational(2)) * a.xi_magnitude(r - 1);
    const Ordering3 o = compare(lhs, rhs);
    if (o == Ordering3::Greater) continue;
    if (o == Ordering3::Less || (lhs.is_exact() && rhs.is_exact())) return Verdict::Fails;
    undecided = true;
  }
  return undecided ? Verdict::Undecidable : Verdict::Holds;
}

LexResult is_lexicographic(const GrowthSequence& a, std::size_t n, std::size_t brute_force_cap) {
  LexResult out;
  bool feasible = n <= a.materialized();
  BigInt work = 0;
  if (feasible) {
    BigInt prefix = 1;
    for (std::size_t r = 1; r <= n; ++r) {
      work += 4 * a.at(r) * prefix;
      prefix *= 4 * a.at(r) + 1;
    }
    feasible = work <= BigInt(static_cast<unsigned long>(brute_force_cap));
  }
  if (!feasible) {
    out.method = "gap";
    out.verdict = lexicographic_by_gap(a, n);
    if (out.verdict == Verdict::Fails) {
      // t_r = -1 against t_i = 2 a_i below it
      for (std::size_t r = 2; r <= n; ++r) {
        if (!a.is_exact(r)) break;
        if (a.at(r) <= 2 * a.xi(r - 1)) {
          for (std::size_t i = 1; i < r; ++i) out.witness.push_back(2 * a.at(i).get_si());
          out.witness.push_back(-1);
          break;
        }
      }
    }
    return out;
  }
  out.method = "brute-force";
  for (std::size_t r = 1; r <= n; ++r) {
    const long ar = a.at(r).get_si();
    std::vector<long> lim(r);
    for (std::size_t i = 0; i + 1 < r; ++i) lim[i] = 2 * a.at(i + 1).get_si();
    for (long mag = 1; mag <= 2 * ar; ++mag) {
      for (long sign_r : {-1L, 1L}) {
        const long tr = sign_r * mag;
        std::vector<long> t(r);
        for (std::size_t i = 0; i + 1 < r; ++i) t[i] = lim[i];
        t[r - 1] = tr;
        while (true) {
          BigInt s = 0;
          for (std::size_t i = 0; i < r; ++i) s += BigInt(t[i]) * a.at(i + 1);
          const int ss = sgn(s);
          if (ss != (tr > 0 ? 1 : -1)) {
            out.verdict = Verdict::Fails;
            out.witness = t;
            return out;
          }
          // odometer, each lower coordinate runs from +lim down to -lim
          std::size_t i = 0;
          while (i + 1 < r && t[i] == -lim[i]) {
            t[i] = lim[i];
            ++i;
          }
          if (i + 1 >= r) break;
          --t[i];
        }
      }
    }
  }
  out.verdict = Verdict::Holds;
  return out;
}

// ---------------------------------------------------------------- helpers

LeFactor le_factor(std::size_t j, const BigInt& a) {
  const Rational q = Rational(BigInt(static_cast<unsigned long>(j)),
                              BigInt(static_cast<unsigned long>(j + 1)))
                         .pow(2);
  const bool exact = a <= 4096;
  const long terms = exact ? a.get_si() : 512;
  Rational s, qi = 1;
  const Rational ainv = Rational(BigInt(1), a);
  for (long i = 0; i < terms; ++i) {
    const Rational f = Rational(1) - Rational(i) * ainv;
    s += qi * f * f;
    qi *= q;
  }
  return {s, exact};
}

Rational le_product_target(std::size_t n) {
  Rational p = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    const long jj = static_cast<long>(j);
    p *= Rational(BigInt((jj + 1) * (jj + 1)), BigInt(2 * jj + 1));
  }
  return p;
}

}  // namespace stagecert
