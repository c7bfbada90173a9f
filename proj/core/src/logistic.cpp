#include "pseudologit/logistic.hpp"

#include <cmath>

namespace pseudologit {

void LogisticParams::validate() const {
  if (!std::isfinite(location) || !std::isfinite(scale)) {
    throw DomainError("logistic parameters must be finite");
  }
  if (scale <= 0.0) {
    throw DomainError("logistic scale must be > 0");
  }
}

namespace detail {

double logistic_survival(double z) {
  if (z >= 0.0) {
    const double t = std::exp(-z);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(z));
}

}  // namespace detail

double pdf(double x, const LogisticParams& p) {
  p.validate();
  if (!std::isfinite(x)) {
    throw DomainError("pdf: x must be finite");
  }
  // The density is symmetric in z, so evaluate at -|z|; t <= 1 always.
  const double z = (x - p.location) / p.scale;
  const double t = std::exp(-std::fabs(z));
  const double onept = 1.0 + t;
  return t / (p.scale * onept * onept);
}

double log_pdf(double x, const LogisticParams& p) {
  p.validate();
  if (!std::isfinite(x)) {
    throw DomainError("log_pdf: x must be finite");
  }
  const double z = (x - p.location) / p.scale;
  const double a = std::fabs(z);
  return -a - 2.0 * std::log1p(std::exp(-a)) - std::log(p.scale);
}

double cdf(double x, const LogisticParams& p) {
  p.validate();
  if (std::isnan(x)) {
    throw DomainError("cdf: x must not be NaN");
  }
  if (std::isinf(x)) {
    return x > 0.0 ? 1.0 : 0.0;
  }
  const double z = (x - p.location) / p.scale;
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double t = std::exp(z);
  return t / (1.0 + t);
}

double quantile(double u, const LogisticParams& p) {
  p.validate();
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("quantile: u must lie strictly inside (0,1)");
  }
  return p.location + p.scale * (std::log(u) - std::log1p(-u));
}

}  // namespace pseudologit
