#ifndef PSEUDOLOGIT_DETAIL_LINALG_HPP
#define PSEUDOLOGIT_DETAIL_LINALG_HPP

#include <vector>

namespace pseudologit::detail {

// Small dense symmetric positive definite helpers, row-major k x k.

/// In-place lower Cholesky factorization; returns false if not PD.
bool cholesky(std::vector<double>& a, int k);

/// Solves L L^T x = b given the factor from cholesky(); b is overwritten.
void cholesky_solve(const std::vector<double>& chol, int k, std::vector<double>& b);

/// Inverse of an SPD matrix; returns false if the factorization fails.
bool spd_inverse(std::vector<double> a, int k, std::vector<double>& inv);

}  // namespace pseudologit::detail

#endif
