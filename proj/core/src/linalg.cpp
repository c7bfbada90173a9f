#include "pseudologit/detail/linalg.hpp"

#include <cmath>

namespace pseudologit::detail {

bool cholesky(std::vector<double>& a, int k) {
  for (int j = 0; j < k; ++j) {
    double d = a[j * k + j];
    for (int p = 0; p < j; ++p) d -= a[j * k + p] * a[j * k + p];
    if (!(d > 0.0) || !std::isfinite(d)) {
      return false;
    }
    const double ljj = std::sqrt(d);
    a[j * k + j] = ljj;
    for (int i = j + 1; i < k; ++i) {
      double s = a[i * k + j];
      for (int p = 0; p < j; ++p) s -= a[i * k + p] * a[j * k + p];
      a[i * k + j] = s / ljj;
    }
    for (int i = 0; i < j; ++i) a[i * k + j] = 0.0;  // zero the upper part
  }
  return true;
}

void cholesky_solve(const std::vector<double>& chol, int k, std::vector<double>& b) {
  // Forward substitution L y = b.
  for (int i = 0; i < k; ++i) {
    double s = b[i];
    for (int j = 0; j < i; ++j) s -= chol[i * k + j] * b[j];
    b[i] = s / chol[i * k + i];
  }
  // Back substitution L^T x = y.
  for (int i = k - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < k; ++j) s -= chol[j * k + i] * b[j];
    b[i] = s / chol[i * k + i];
  }
}

bool spd_inverse(std::vector<double> a, int k, std::vector<double>& inv) {
  if (!cholesky(a, k)) {
    return false;
  }
  inv.assign(static_cast<std::size_t>(k) * k, 0.0);
  std::vector<double> e(k);
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < k; ++i) e[i] = (i == c) ? 1.0 : 0.0;
    cholesky_solve(a, k, e);
    for (int i = 0; i < k; ++i) inv[i * k + c] = e[i];
  }
  return true;
}

}  // namespace pseudologit::detail
