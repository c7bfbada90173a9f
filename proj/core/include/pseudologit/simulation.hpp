#ifndef PSEUDOLOGIT_SIMULATION_HPP
#define PSEUDOLOGIT_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pseudologit/inference.hpp"
#include "pseudologit/random.hpp"

namespace pseudologit {

/// Draws (x, y) by sequential inverse transform: x from the marginal, then
/// y from the conditional at x. Consumes exactly two uniforms.
template <UniformSource Rng>
std::pair<double, double> sample_pair(const ModelParams& p, Rng& rng) {
  p.validate();
  const double x = quantile(rng.uniform(), p.marginal_x());
  const double y = quantile(rng.uniform(), p.conditional_y(x));
  return {x, y};
}

/// n independent pairs with cached summary moments.
template <UniformSource Rng>
PairedSample sample_dataset(const ModelParams& p, int n, Rng& rng) {
  if (n < 1) {
    throw DomainError("sample_dataset: n must be >= 1");
  }
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = sample_pair(p, rng);
    xs[i] = x;
    ys[i] = y;
  }
  return PairedSample(std::move(xs), std::move(ys));
}

struct StudyConfig {
  ModelParams true_params;
  std::vector<int> sample_sizes;
  int replicates = 500;
  /// When set, each replicate additionally fits this sub-model and the
  /// report gains restricted-fit rows.
  std::optional<SubModel> submodel;
  /// Bootstrap replicates per dataset; < 2 disables the per-replicate
  /// bootstrap, and SEs/CIs then come from the spread of the estimates
  /// across study replicates.
  int bootstrap_B = 0;
  double ci_level = 0.95;
  std::uint64_t seed = 0;
  /// Method-of-moments variant reported in the MoM columns.
  MomVariant mom_variant = MomVariant::Corrected;

  void validate() const;
};

/// Aggregated estimator behavior for one parameter at one sample size.
struct ParamAggregate {
  double mean = 0.0;
  double se = 0.0;
  double bias = 0.0;  // mean - true value, exact arithmetic identity
  ConfidenceInterval ci{};
};

/// Which fit a report row aggregates.
enum class StudyModel { Full, Restricted };

struct StudyRow {
  int sample_size = 0;
  StudyModel model = StudyModel::Full;
  int param_index = 0;  // ParamIndex order
  double true_value = 0.0;
  ParamAggregate mle;
  /// Present only on full-model rows.
  std::optional<ParamAggregate> mom;
};

struct StudySizeSummary {
  int sample_size = 0;
  int replicates_used = 0;
  int replicates_failed = 0;
  double pearson_corr_mean = 0.0;
  double minus2_loglik_mean = 0.0;  // full-model fit
  std::optional<double> restricted_minus2_loglik_mean;
};

struct StudyReport {
  StudyConfig config;
  std::vector<StudyRow> rows;
  std::vector<StudySizeSummary> summaries;
};

/// Runs the Monte Carlo study: per sample size and replicate, draws a
/// dataset, fits MoM (both variants; the configured one is reported), the
/// full MLE, optionally the sub-model, and aggregates means, biases, SEs
/// and CIs. Deterministic in cfg.seed regardless of thread count (streams
/// are split per sample-size index, replicate and purpose; reduction is in
/// replicate order). threads = 0 picks hardware concurrency. Throws if more
/// than 10% of replicates fail at any sample size.
StudyReport run_study(const StudyConfig& cfg, int threads = 0);

/// Regular grid of joint density values for external plotting, row-major
/// over x then y (value(ix, iy) = values[ix * resolution + iy]).
struct DensityGrid {
  std::vector<double> xs;       // resolution ascending values
  std::vector<double> ys;
  std::vector<double> values;   // resolution^2 densities

  double value(int ix, int iy) const {
    return values[static_cast<std::size_t>(ix) * ys.size() + static_cast<std::size_t>(iy)];
  }
};

DensityGrid density_grid(const ModelParams& p, std::pair<double, double> x_range,
                         std::pair<double, double> y_range, int resolution);

}  // namespace pseudologit

#endif
