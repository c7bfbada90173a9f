#ifndef PSEUDOLOGIT_LOGISTIC_HPP
#define PSEUDOLOGIT_LOGISTIC_HPP

#include <concepts>

#include "pseudologit/errors.hpp"

namespace pseudologit {

/// Anything that can produce uniform draws strictly inside (0,1).
template <class T>
concept UniformSource = requires(T rng) {
  { rng.uniform() } -> std::convertible_to<double>;
};

/// Location/scale pair of a univariate logistic distribution.
struct LogisticParams {
  double location = 0.0;
  double scale = 1.0;

  /// Throws DomainError unless scale > 0 and both fields are finite.
  void validate() const;
};

/// Density exp(-z) / (scale * (1+exp(-z))^2) with z = (x-location)/scale,
/// evaluated through exp of -|z| only, so it never overflows.
double pdf(double x, const LogisticParams& p);

/// log pdf: -|z| - 2*log1p(exp(-|z|)) - log(scale).
double log_pdf(double x, const LogisticParams& p);

/// 1 / (1 + exp(-z)). Accepts +-infinity, mapping to exact 1/0.
double cdf(double x, const LogisticParams& p);

/// Inverse cdf: location + scale * log(u/(1-u)), u in (0,1) strictly.
double quantile(double u, const LogisticParams& p);

/// Inverse-transform draw; consumes exactly one uniform from the stream.
template <UniformSource Rng>
double sample(const LogisticParams& p, Rng& rng) {
  return quantile(rng.uniform(), p);
}

namespace detail {
/// exp(-z)/(1+exp(-z)) = 1 - standard logistic cdf(z), evaluated with exp
/// of nonpositive arguments only.
double logistic_survival(double z);
}  // namespace detail

}  // namespace pseudologit

#endif
