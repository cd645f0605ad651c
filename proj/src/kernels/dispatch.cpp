#include "stagecert/kernels.hpp"

namespace stagecert::kernels {

std::vector<RVec> lagrange_coefficients(long lo, long d, Backend b) {
  return b == Backend::Serial ? serial::lagrange_coefficients(lo, d) : parallel::lagrange_coefficients(lo, d);
}

RVec lambda_from_gamma(const RVec& phi, long lo, Backend b) {
  const long d = static_cast<long>(phi.size());
  const auto coeff = lagrange_coefficients(lo, d, b);
  RVec lambda(d);
  for (long i = 0; i < d; ++i) {
    if (phi[i].is_zero()) continue;
    for (long t = 0; t < d; ++t) lambda[t] += phi[i] * coeff[i][t];
  }
  return lambda;
}

RationalMatrix gram(const KernelInput& in, Backend b) {
  return b == Backend::Serial ? serial::gram(in) : parallel::gram(in);
}

RationalMatrix gram_truncated(const KernelInput& in, long degree, Backend b) {
  return b == Backend::Serial ? serial::gram_truncated(in, degree) : parallel::gram_truncated(in, degree);
}

RVec enumerate_by_degree(const KernelInput& in, const RVec& x, long degree, Backend b) {
  return b == Backend::Serial ? serial::enumerate_by_degree(in, x, degree)
                              : parallel::enumerate_by_degree(in, x, degree);
}

}  // namespace stagecert::kernels
