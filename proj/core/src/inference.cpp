#include "pseudologit/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pseudologit/detail/fit_space.hpp"
#include "pseudologit/random.hpp"

namespace pseudologit {

namespace {

detail::Space space_of(SubModel sub) {
  switch (sub) {
    case SubModel::EqualScales: return detail::Space::EqualScales;
    case SubModel::UnitMarginalScale: return detail::Space::UnitSigma0;
    case SubModel::UnitConditionalScale: return detail::Space::UnitSigma1;
  }
  throw DomainError("space_of: bad sub-model");
}

// Project a full-model start onto the constrained space.
ModelParams project_init(SubModel sub, ModelParams p) {
  switch (sub) {
    case SubModel::EqualScales: {
      const double s = std::sqrt(p.sigma0 * p.sigma1);
      p.sigma0 = s;
      p.sigma1 = s;
      break;
    }
    case SubModel::UnitMarginalScale:
      p.sigma0 = 1.0;
      break;
    case SubModel::UnitConditionalScale:
      p.sigma1 = 1.0;
      break;
  }
  return p;
}

ModelParams restricted_init(const PairedSample& s, SubModel sub) {
  constexpr double kPi = std::numbers::pi;
  ModelParams start;
  try {
    start = method_of_moments(s, MomVariant::Corrected).estimates;
  } catch (const Error&) {
    start = {s.mean_x(), std::sqrt(3.0 * s.var_x()) / kPi, s.mean_y(), 0.0,
             std::sqrt(3.0 * s.var_y()) / kPi};
  }
  return project_init(sub, start);
}

// Sorted-sample quantile with linear interpolation between order statistics.
double percentile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, n - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view submodel_name(SubModel sub) {
  switch (sub) {
    case SubModel::EqualScales: return "equal-scales";
    case SubModel::UnitMarginalScale: return "sigma0-one";
    case SubModel::UnitConditionalScale: return "sigma1-one";
  }
  throw DomainError("submodel_name: bad enum");
}

FitResult fit_restricted(const PairedSample& s, SubModel sub, const SolverOptions& opts) {
  detail::check_fittable(s);
  const detail::Space sp = space_of(sub);
  FitResult fr = detail::fit_in_space(s, sp, restricted_init(s, sub), opts,
                                      FitMethod::MleQuasiNewton);
  if (opts.compute_std_errors && fr.converged) {
    fr.std_errors = detail::space_standard_errors(sp, fr.estimates, s);
  }
  return fr;
}

LrtResult lrt(const PairedSample& s, SubModel sub, const SolverOptions& opts) {
  LrtResult res;
  res.submodel = sub;
  res.restricted = fit_restricted(s, sub, opts);
  res.unrestricted = fit_mle(s, std::nullopt, opts);

  // The restricted optimum is a feasible full-model point. If the full fit
  // landed below it, polish the full fit from there so nesting holds by
  // construction.
  if (res.restricted.loglik_at_estimate > res.unrestricted.loglik_at_estimate - 1e-9) {
    FitResult polished = fit_mle(s, res.restricted.estimates, opts);
    if (polished.loglik_at_estimate >= res.unrestricted.loglik_at_estimate) {
      res.unrestricted = polished;
    }
  }

  const double gap =
      res.restricted.loglik_at_estimate - res.unrestricted.loglik_at_estimate;
  if (gap > 1e-6) {
    throw OptimizerInconsistencyError(
        "lrt: restricted log-likelihood exceeds unrestricted beyond slack");
  }
  res.statistic_T = std::exp(gap);
  res.minus2_log_T = std::max(0.0, -2.0 * gap);
  res.df = 1;
  res.p_value = chi2_survival(res.minus2_log_T, res.df);
  return res;
}

ConfidenceInterval wald_ci(double estimate, double se, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("wald_ci: level must lie strictly inside (0,1)");
  }
  if (!(se > 0.0)) {
    throw DomainError("wald_ci: se must be > 0");
  }
  const double z = normal_quantile(0.5 + 0.5 * level);
  return {estimate - z * se, estimate + z * se, level, ConfidenceInterval::Method::Wald};
}

BootstrapSummary bootstrap(const PairedSample& s, const BootstrapEstimator& estimator,
                           int B, std::uint64_t seed, double level) {
  if (B < 2) {
    throw DomainError("bootstrap: need B >= 2");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("bootstrap: level must lie strictly inside (0,1)");
  }

  const std::size_t n = s.size();
  RandomStream root(seed);
  std::array<std::vector<double>, 5> reps;
  for (auto& v : reps) v.reserve(B);

  int failed = 0;
  std::vector<double> rx(n), ry(n);
  for (int b = 0; b < B; ++b) {
    RandomStream stream = root.split(static_cast<std::uint64_t>(b));
    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(stream.uniform() * static_cast<double>(n));
      const std::size_t j = std::min(idx, n - 1);
      rx[i] = s.xs()[j];
      ry[i] = s.ys()[j];
    }
    try {
      const ModelParams est = estimator(PairedSample(rx, ry));
      const auto arr = est.as_array();
      for (int k = 0; k < 5; ++k) reps[k].push_back(arr[k]);
    } catch (const Error&) {
      ++failed;  // degenerate resample or failed fit: drop and count
    }
  }

  if (failed > B / 10) {
    throw Error("bootstrap: more than 10% of replicates failed");
  }
  const int used = B - failed;

  BootstrapSummary out;
  out.replicates_requested = B;
  out.replicates_used = used;
  out.replicates_failed = failed;

  for (int k = 0; k < 5; ++k) {
    std::vector<double>& v = reps[k];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(used);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out.std_errors[k] = used > 1 ? std::sqrt(ss / static_cast<double>(used - 1)) : 0.0;

    std::sort(v.begin(), v.end());
    const double a = (1.0 - level) / 2.0;
    out.intervals[k] = {percentile(v, a), percentile(v, 1.0 - a), level,
                        ConfidenceInterval::Method::BootstrapPercentile};
  }
  return out;
}

}  // namespace pseudologit
