#pragma once

#include <vector>

#include "stagecert/linalg.hpp"

namespace stagecert::kernels {

enum class Backend { Serial, Parallel };

/// Input shared by the Gram kernels. chars[s][t] is chi_j(s) for non-e generator s at block index t.
/// e_diag[t] = a_j^2/(a_j^2 - 1) multiplies the diagonal; empty means no e-generators.
struct KernelInput {
  RVec lambda;
  std::vector<RVec> chars;
  RVec e_diag;
  std::size_t dim() const { return lambda.size(); }
};

/// coeff[i][t]: coefficient of t^(lo+1+t) in p_i(t) = (2^i t)^(1+lo) prod_{m != i} (t - 2^-m)/(2^-i - 2^-m)
std::vector<RVec> lagrange_coefficients(long lo, long d, Backend b = Backend::Parallel);

/// lambda_t = sum_i phi_i coeff[i][t]
RVec lambda_from_gamma(const RVec& phi, long lo, Backend b = Backend::Parallel);

/// G_jk = lambda_j lambda_k e_diag_j^[j==k] prod_s 1/(1 - chi_j(s) chi_k(s))
RationalMatrix gram(const KernelInput& in, Backend b = Backend::Parallel);

/// Same with prod_s 1/(1 - w_s) replaced by its expansion truncated at total degree <= degree.
RationalMatrix gram_truncated(const KernelInput& in, long degree, Backend b = Backend::Parallel);

/// Per-degree sums over index functions i of the non-e generators, |i| = m for m = 0..degree, of
///   (sum_t lambda_t x_t chi_t^i)^2 + sum_t (e_diag_t - 1) (lambda_t x_t chi_t^i)^2
RVec enumerate_by_degree(const KernelInput& in, const RVec& x, long degree,
                         Backend b = Backend::Parallel);

namespace serial {
std::vector<RVec> lagrange_coefficients(long lo, long d);
RationalMatrix gram(const KernelInput& in);
RationalMatrix gram_truncated(const KernelInput& in, long degree);
RVec enumerate_by_degree(const KernelInput& in, const RVec& x, long degree);
}  // namespace serial

namespace parallel {
std::vector<RVec> lagrange_coefficients(long lo, long d);
RationalMatrix gram(const KernelInput& in);
RationalMatrix gram_truncated(const KernelInput& in, long degree);
RVec enumerate_by_degree(const KernelInput& in, const RVec& x, long degree);
}  // namespace parallel

}  // namespace stagecert::kernels
