#ifndef PSEUDOLOGIT_INFERENCE_HPP
#define PSEUDOLOGIT_INFERENCE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>

#include "pseudologit/estimation.hpp"
#include "pseudologit/special_functions.hpp"

namespace pseudologit {

/// The three nested sub-models, each a single equality constraint.
enum class SubModel {
  EqualScales,         // sigma0 = sigma1
  UnitMarginalScale,   // sigma0 = 1
  UnitConditionalScale // sigma1 = 1
};

std::string_view submodel_name(SubModel sub);

struct ConfidenceInterval {
  enum class Method { Wald, BootstrapPercentile };
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  Method method = Method::Wald;
};

struct LrtResult {
  SubModel submodel;
  FitResult restricted;
  FitResult unrestricted;
  /// Likelihood ratio sup L(restricted) / sup L(unrestricted), computed in
  /// log space as exp of the log-likelihood gap.
  double statistic_T = 1.0;
  /// max(0, -2 log T); negative gaps within 1e-6 slack clamp to zero.
  double minus2_log_T = 0.0;
  int df = 1;
  double p_value = 1.0;

  bool converged() const { return restricted.converged && unrestricted.converged; }
};

/// Maximizes the log-likelihood over the sub-model's four free parameters
/// (same quasi-Newton machinery as fit_mle, reduced coordinates). Standard
/// errors come from the reduced observed information; for EqualScales the
/// common-scale SE fills both scale slots, a pinned scale reports 0.
FitResult fit_restricted(const PairedSample& s, SubModel sub,
                         const SolverOptions& opts = {});

/// Generalized likelihood ratio test of the sub-model against the full
/// model; the p-value is the chi-squared(1) upper tail of -2 log T.
LrtResult lrt(const PairedSample& s, SubModel sub, const SolverOptions& opts = {});

/// estimate +/- z * se at the given two-sided level.
ConfidenceInterval wald_ci(double estimate, double se, double level);

/// A fit procedure usable under resampling; must be deterministic given
/// the data.
using BootstrapEstimator = std::function<ModelParams(const PairedSample&)>;

struct BootstrapSummary {
  std::array<double, 5> std_errors{};
  std::array<ConfidenceInterval, 5> intervals{};
  int replicates_requested = 0;
  int replicates_used = 0;
  int replicates_failed = 0;
};

/// Nonparametric pairs bootstrap: B resamples of the n pairs with
/// replacement, SE = standard deviation of the replicate estimates, CI =
/// percentile interval. Replicates whose estimator throws are dropped and
/// counted; more than 10% failures is an error. Deterministic given seed.
BootstrapSummary bootstrap(const PairedSample& s, const BootstrapEstimator& estimator,
                           int B, std::uint64_t seed, double level);

}  // namespace pseudologit

#endif
