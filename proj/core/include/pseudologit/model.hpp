#ifndef PSEUDOLOGIT_MODEL_HPP
#define PSEUDOLOGIT_MODEL_HPP

#include <array>
#include <string_view>

#include "pseudologit/logistic.hpp"
#include "pseudologit/sample.hpp"

namespace pseudologit {

/// Index order of the five model parameters wherever they appear as a vector.
enum ParamIndex : int { kMu = 0, kSigma0 = 1, kAlpha = 2, kBeta = 3, kSigma1 = 4 };

std::string_view param_name(int index);

/// Five-parameter bivariate pseudo-logistic model:
/// X ~ Logistic(mu, sigma0), Y | X = x ~ Logistic(alpha + beta*x, sigma1).
///
/// mu, alpha, beta may be any finite reals; sigma0, sigma1 must be positive.
struct ModelParams {
  double mu = 0.0;
  double sigma0 = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double sigma1 = 1.0;

  void validate() const;

  LogisticParams marginal_x() const { return {mu, sigma0}; }
  LogisticParams conditional_y(double x) const;

  std::array<double, 5> as_array() const { return {mu, sigma0, alpha, beta, sigma1}; }
  static ModelParams from_array(const std::array<double, 5>& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
};

/// Closed-form first and second moments of (X, Y).
struct MomentSummary {
  double mean_x;
  double mean_y;
  double var_x;
  double var_y;
  double cov_xy;
  double rho;
};

/// Regression function alpha + beta * x.
double conditional_location(const ModelParams& p, double x);

/// Joint density: pdf(x; mu, sigma0) * pdf(y; alpha + beta*x, sigma1).
double joint_pdf(const ModelParams& p, double x, double y);

/// Stable sum of the two log factors.
double joint_log_pdf(const ModelParams& p, double x, double y);

/// Gumbel's bivariate logistic cdf [1 + e^-x + e^-y]^-1 (kept for
/// comparison against the pseudo-logistic model; it has no free parameters).
double gumbel_cdf(double x, double y);

MomentSummary moments(const ModelParams& p);

/// Population correlation beta*sigma0 / sqrt(sigma1^2 + beta^2*sigma0^2).
double correlation(const ModelParams& p);

/// Sum of joint_log_pdf over the sample.
double loglik(const ModelParams& p, const PairedSample& s);

/// Gradient of loglik in (mu, sigma0, alpha, beta, sigma1), as raw partial
/// derivatives: a root of this vector is a stationary point of loglik.
std::array<double, 5> score(const ModelParams& p, const PairedSample& s);

}  // namespace pseudologit

#endif
