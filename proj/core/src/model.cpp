#include "pseudologit/model.hpp"

#include <cmath>
#include <numbers>

namespace pseudologit {

std::string_view param_name(int index) {
  switch (index) {
    case kMu: return "mu";
    case kSigma0: return "sigma0";
    case kAlpha: return "alpha";
    case kBeta: return "beta";
    case kSigma1: return "sigma1";
    default: throw DomainError("param_name: index out of range");
  }
}

void ModelParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(sigma0) || !std::isfinite(alpha) ||
      !std::isfinite(beta) || !std::isfinite(sigma1)) {
    throw DomainError("model parameters must be finite");
  }
  if (sigma0 <= 0.0 || sigma1 <= 0.0) {
    throw DomainError("model scales sigma0, sigma1 must be > 0");
  }
}

LogisticParams ModelParams::conditional_y(double x) const {
  return {alpha + beta * x, sigma1};
}

double conditional_location(const ModelParams& p, double x) {
  p.validate();
  return p.alpha + p.beta * x;
}

double joint_pdf(const ModelParams& p, double x, double y) {
  p.validate();
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("joint_pdf: inputs must be finite");
  }
  return pdf(x, p.marginal_x()) * pdf(y, p.conditional_y(x));
}

double joint_log_pdf(const ModelParams& p, double x, double y) {
  p.validate();
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("joint_log_pdf: inputs must be finite");
  }
  return log_pdf(x, p.marginal_x()) + log_pdf(y, p.conditional_y(x));
}

double gumbel_cdf(double x, double y) {
  // IEEE semantics handle the infinite limits: exp(+inf) -> inf -> cdf 0,
  // exp(-inf) -> 0 -> the univariate marginal.
  return 1.0 / (1.0 + std::exp(-x) + std::exp(-y));
}

MomentSummary moments(const ModelParams& p) {
  p.validate();
  constexpr double pi2_3 = std::numbers::pi * std::numbers::pi / 3.0;
  MomentSummary m;
  m.mean_x = p.mu;
  m.mean_y = p.alpha + p.beta * p.mu;
  m.var_x = pi2_3 * p.sigma0 * p.sigma0;
  m.var_y = pi2_3 * (p.sigma1 * p.sigma1 + p.beta * p.beta * p.sigma0 * p.sigma0);
  m.cov_xy = pi2_3 * p.beta * p.sigma0 * p.sigma0;
  m.rho = correlation(p);
  return m;
}

double correlation(const ModelParams& p) {
  p.validate();
  const double bs = p.beta * p.sigma0;
  return bs / std::sqrt(p.sigma1 * p.sigma1 + bs * bs);
}

double loglik(const ModelParams& p, const PairedSample& s) {
  p.validate();
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    total += joint_log_pdf(p, s.xs()[i], s.ys()[i]);
  }
  return total;
}

std::array<double, 5> score(const ModelParams& p, const PairedSample& s) {
  p.validate();
  const std::size_t n = s.size();
  // With z0 = (x-mu)/sigma0 and z1 = (y-alpha-beta*x)/sigma1, each per-pair
  // log density term is -z - log(sigma) - 2*log(1+exp(-z)) per factor, and
  // 1 - 2*exp(-z)/(1+exp(-z)) = tanh(z/2).
  double s_mu = 0.0, s_sigma0 = 0.0, s_alpha = 0.0, s_beta = 0.0, s_sigma1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = s.xs()[i];
    const double y = s.ys()[i];
    const double z0 = (x - p.mu) / p.sigma0;
    const double z1 = (y - p.alpha - p.beta * x) / p.sigma1;
    const double t0 = std::tanh(0.5 * z0);
    const double t1 = std::tanh(0.5 * z1);
    s_mu += t0;
    s_sigma0 += z0 * t0 - 1.0;
    s_alpha += t1;
    s_beta += x * t1;
    s_sigma1 += z1 * t1 - 1.0;
  }
  return {s_mu / p.sigma0, s_sigma0 / p.sigma0, s_alpha / p.sigma1,
          s_beta / p.sigma1, s_sigma1 / p.sigma1};
}

}  // namespace pseudologit
