#pragma once

#include <map>
#include <string>
#include <vector>

#include "stagecert/linalg.hpp"
#include "stagecert/numeric.hpp"
#include "stagecert/sequence.hpp"

namespace stagecert {

/// Element of A_0: coordinates x_j = p(2^-j) + correction(j), p(t) = sum_{m>=1} poly(m) t^m.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(std::map<long, Rational> poly, std::map<long, Rational> correction);

  static AlgebraElement zero() { return {}; }
  static AlgebraElement scalar_g(const Rational& c, long power);  // c g^power

  const std::map<long, Rational>& poly() const { return poly_; }
  const std::map<long, Rational>& correction() const { return corr_; }
  bool is_zero() const { return poly_.empty() && corr_.empty(); }
  long degree() const { return poly_.empty() ? 0 : poly_.rbegin()->first; }
  long support_end() const { return corr_.empty() ? 0 : corr_.rbegin()->first; }

  /// p(2^-j)
  Rational poly_at(long j) const;
  /// x_j
  Rational coord(long j) const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement scaled(const Rational& c) const;
  AlgebraElement pow(long k) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.poly_ == b.poly_ && a.corr_ == b.corr_;
  }

  std::string str() const;

 private:
  void prune();
  std::map<long, Rational> poly_;
  std::map<long, Rational> corr_;
};

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement make_g();
AlgebraElement make_e(long i);
/// g_n = 2^n g ^ 1
AlgebraElement make_gn(long n);
/// P_n = e_1 + ... + e_n
AlgebraElement make_Pn(long n);

/// sup_j |x_j|. Exact when attained inside the scan window, otherwise an enclosure.
CertifiedScalar c0_norm(const AlgebraElement& x, long window_cap = 1 << 16);
/// sup over lo < j <= hi only
Rational c0_norm_on(const AlgebraElement& x, long lo, long hi);

/// Coordinates a_n < j <= a_{n+1} of stage n.
struct Stage {
  std::size_t n = 0;
  long lo = 0;  // a_n
  long hi = 0;  // a_{n+1}
  long dim() const { return hi - lo; }
  long index(long j) const { return j - lo - 1; }
  long coord(long t) const { return lo + 1 + t; }
  bool contains(long j) const { return j > lo && j <= hi; }
};

/// Throws Unavailable / Resource when the stage is not materialized or exceeds the cap.
Stage make_stage(const GrowthSequence& a, std::size_t n, long dimension_cap = 512);

/// Element of H_n = Delta_n A_0: sum_k gamma(k) gamma_k + sum_j e_part(j) e_j.
class GammaVector {
 public:
  GammaVector() = default;
  explicit GammaVector(Stage s) : stage_(s) {}
  GammaVector(Stage s, std::map<long, Rational> gamma, std::map<long, Rational> e_part = {});

  static GammaVector gamma_k(Stage s, long k, const Rational& c = 1);
  static GammaVector e(Stage s, long j, const Rational& c = 1);
  /// from explicit coordinates x_j, j in the block (pure e-part)
  static GammaVector from_coords(Stage s, const RVec& x);

  const Stage& stage() const { return stage_; }
  const std::map<long, Rational>& gamma() const { return gamma_; }
  const std::map<long, Rational>& e_part() const { return e_; }
  bool is_zero() const { return gamma_.empty() && e_.empty(); }

  /// value at coordinate j of the block
  Rational coord(long j) const;
  /// dense e-coordinates, index t <-> j = lo + 1 + t
  RVec coords() const;

  GammaVector operator+(const GammaVector& o) const;
  GammaVector operator-(const GammaVector& o) const;
  GammaVector operator*(const GammaVector& o) const;
  GammaVector scaled(const Rational& c) const;
  GammaVector pow(long k) const;

  friend bool operator==(const GammaVector& a, const GammaVector& b) {
    return a.gamma_ == b.gamma_ && a.e_ == b.e_;
  }

 private:
  void prune();
  Stage stage_;
  std::map<long, Rational> gamma_;
  std::map<long, Rational> e_;
};

/// Unique gamma_0..gamma_{d-1} coordinates of a block vector.
std::map<long, Rational> interpolate_gamma(const Stage& s, const RVec& x);

inline constexpr long kCanonicalDimension = 128;

/// Delta_n x: poly(m) -> gamma_m, block corrections -> e-part.
/// When there is an e-part and the pure gamma_0..gamma_{d-1} form is sparser, that form is returned.
GammaVector compress(const AlgebraElement& x, const Stage& s);

/// Stage generators: gamma_1, u_i = i/(i+1) 2^(a_i^2) gamma_{a_i}, v_i = i(2^(a_i^2) gamma_{1+a_i} - gamma_1)
/// for i <= n, and the symbolic family a_j^-1 e_j over the block.
struct GeneratorSet {
  Stage stage;
  std::vector<std::string> names;          // "gamma1", "u1", "v1", ...
  std::vector<GammaVector> non_e;          // 2n + 1 entries
  std::vector<Rational> e_weight;          // a_j^-1 per block index t (empty if unavailable)
  bool has_e_weights() const { return !e_weight.empty(); }
  /// chi_j(s) for non-e generator s at block index t
  std::vector<RVec> characters;            // [generator][t]
  std::size_t count_non_e() const { return non_e.size(); }
};

GeneratorSet make_generators(const GrowthSequence& a, const Stage& s);

/// The S_0 element behind each stage generator, as an element of A_0.
std::vector<AlgebraElement> s0_elements(const GrowthSequence& a, std::size_t k_max);

}  // namespace stagecert
