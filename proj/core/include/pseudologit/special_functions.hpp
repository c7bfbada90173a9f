#ifndef PSEUDOLOGIT_SPECIAL_FUNCTIONS_HPP
#define PSEUDOLOGIT_SPECIAL_FUNCTIONS_HPP

namespace pseudologit {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_lower(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_upper(double a, double x);

/// Upper tail of the chi-squared distribution with df degrees of freedom,
/// absolute accuracy better than 1e-10. Throws DomainError for x < 0 or
/// df < 1.
double chi2_survival(double x, int df);

/// Standard normal cdf.
double normal_cdf(double z);

/// Inverse standard normal cdf, p in (0,1), accurate to ~1e-15.
double normal_quantile(double p);

}  // namespace pseudologit

#endif
