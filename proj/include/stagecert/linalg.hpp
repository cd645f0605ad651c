#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stagecert/numeric.hpp"

namespace stagecert {

using RVec = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RVec operator*(const RVec& x) const;
  bool is_symmetric() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Pairwise summation; unrelated denominators make a running sum grow at every step.
Rational balanced_sum(RVec terms);
Rational dot(const RVec& x, const RVec& y);
/// x^T M y
Rational bilinear(const RationalMatrix& m, const RVec& x, const RVec& y);
inline Rational quadratic(const RationalMatrix& m, const RVec& x) { return bilinear(m, x, x); }

/// Diagonally pivoted LDL^T of a symmetric PSD matrix: M = F^T diag(delta) F.
/// Row k of F has a 1 at pivots[k] and zeros at the earlier pivots.
struct PivotedLdl {
  bool psd = true;
  std::vector<std::size_t> pivots;
  RationalMatrix factor;  // rank x n
  RVec delta;             // strictly positive
  std::size_t rank() const { return delta.size(); }
  /// a vector x with x^T M x < 0 when psd is false
  RVec negative_witness;
};

PivotedLdl pivoted_ldl(const RationalMatrix& m);
bool is_positive_semidefinite(const RationalMatrix& m);

/// Unpivoted LDL^T positive-definiteness test. On failure, witness satisfies
/// witness^T M witness = failing_pivot <= 0.
struct DefinitenessTest {
  bool positive_definite = true;
  std::size_t failing_index = 0;
  Rational failing_pivot;
  RVec witness;
};

DefinitenessTest positive_definite_test(const RationalMatrix& m);

}  // namespace stagecert
