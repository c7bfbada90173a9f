#include "pseudologit/simulation.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace pseudologit {

namespace {

// Stream purposes under each (size index, replicate) node.
constexpr std::uint64_t kPurposeData = 0;
constexpr std::uint64_t kPurposeBootstrap = 1;

struct ReplicateOutcome {
  bool ok = false;
  std::array<double, 5> mom{};
  std::array<double, 5> mle{};
  std::array<double, 5> restricted{};
  // Per-replicate intervals (bootstrap percentile when B >= 2, else Wald
  // from the information SEs for the MLE).
  std::array<ConfidenceInterval, 5> mle_ci{};
  std::array<ConfidenceInterval, 5> mom_ci{};
  std::array<double, 5> mle_boot_se{};
  std::array<double, 5> mom_boot_se{};
  bool have_per_replicate_ci = false;
  double pearson = 0.0;
  double minus2_loglik = 0.0;
  double restricted_minus2_loglik = 0.0;
};

ReplicateOutcome run_replicate(const StudyConfig& cfg, int n, RandomStream data_stream,
                               RandomStream bootstrap_stream) {
  ReplicateOutcome out;
  const PairedSample ds = sample_dataset(cfg.true_params, n, data_stream);

  // Both MoM variants are computed; only the configured one is reported,
  // and only its failure disqualifies the replicate.
  try {
    (void)method_of_moments(ds, cfg.mom_variant == MomVariant::Paper
                                    ? MomVariant::Corrected
                                    : MomVariant::Paper);
  } catch (const Error&) {
    // the unreported variant may fail without consequence
  }
  const FitResult mom = method_of_moments(ds, cfg.mom_variant);
  const FitResult mle = fit_mle(ds);
  if (!mle.converged) {
    throw Error("replicate: MLE did not converge");
  }
  out.mom = mom.estimates.as_array();
  out.mle = mle.estimates.as_array();
  out.pearson = pearson_correlation(ds);
  out.minus2_loglik = -2.0 * mle.loglik_at_estimate;

  if (cfg.submodel) {
    const FitResult restr = fit_restricted(ds, *cfg.submodel);
    if (!restr.converged) {
      throw Error("replicate: restricted fit did not converge");
    }
    out.restricted = restr.estimates.as_array();
    out.restricted_minus2_loglik = -2.0 * restr.loglik_at_estimate;
  }

  if (cfg.bootstrap_B >= 2) {
    const std::uint64_t bseed = bootstrap_stream.next_u64();
    const MomVariant variant = cfg.mom_variant;
    const BootstrapSummary mle_bs = bootstrap(
        ds, [](const PairedSample& r) { return fit_mle(r).estimates; },
        cfg.bootstrap_B, bseed, cfg.ci_level);
    const BootstrapSummary mom_bs = bootstrap(
        ds,
        [variant](const PairedSample& r) { return method_of_moments(r, variant).estimates; },
        cfg.bootstrap_B, bseed + 1, cfg.ci_level);
    out.mle_ci = mle_bs.intervals;
    out.mom_ci = mom_bs.intervals;
    out.mle_boot_se = mle_bs.std_errors;
    out.mom_boot_se = mom_bs.std_errors;
    out.have_per_replicate_ci = true;
  }

  out.ok = true;
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void StudyConfig::validate() const {
  true_params.validate();
  if (replicates < 1) {
    throw DomainError("study config: replicates must be >= 1");
  }
  if (sample_sizes.empty()) {
    throw DomainError("study config: need at least one sample size");
  }
  for (int n : sample_sizes) {
    if (n < 6) {
      throw DomainError("study config: sample sizes must be >= 6");
    }
  }
  if (!(ci_level > 0.0 && ci_level < 1.0)) {
    throw DomainError("study config: ci_level must lie strictly inside (0,1)");
  }
}

StudyReport run_study(const StudyConfig& cfg, int threads) {
  cfg.validate();
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }

  StudyReport report;
  report.config = cfg;
  const RandomStream root(cfg.seed);
  const double z = normal_quantile(0.5 + 0.5 * cfg.ci_level);
  const auto truth = cfg.true_params.as_array();

  for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
    const int n = cfg.sample_sizes[si];
    const int R = cfg.replicates;
    const RandomStream size_stream = root.split(si);

    std::vector<ReplicateOutcome> outcomes(R);
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= R) break;
        const RandomStream node = size_stream.split(static_cast<std::uint64_t>(r));
        try {
          outcomes[r] = run_replicate(cfg, n, node.split(kPurposeData),
                                      node.split(kPurposeBootstrap));
        } catch (const Error&) {
          outcomes[r].ok = false;  // recorded and excluded
        }
      }
    };
    if (threads == 1 || R == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      const int nw = std::min(threads, R);
      pool.reserve(nw);
      for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    // Reduce in replicate-index order.
    std::vector<const ReplicateOutcome*> used;
    used.reserve(R);
    int failed = 0;
    for (const auto& o : outcomes) {
      if (o.ok) {
        used.push_back(&o);
      } else {
        ++failed;
      }
    }
    if (failed * 10 > R) {
      throw Error("run_study: more than 10% of replicates failed at n=" + std::to_string(n));
    }

    StudySizeSummary summary;
    summary.sample_size = n;
    summary.replicates_used = static_cast<int>(used.size());
    summary.replicates_failed = failed;
    {
      std::vector<double> pc, m2;
      pc.reserve(used.size());
      m2.reserve(used.size());
      for (const auto* o : used) {
        pc.push_back(o->pearson);
        m2.push_back(o->minus2_loglik);
      }
      summary.pearson_corr_mean = mean_of(pc);
      summary.minus2_loglik_mean = mean_of(m2);
      if (cfg.submodel) {
        std::vector<double> rm2;
        rm2.reserve(used.size());
        for (const auto* o : used) rm2.push_back(o->restricted_minus2_loglik);
        summary.restricted_minus2_loglik_mean = mean_of(rm2);
      }
    }
    report.summaries.push_back(summary);

    const bool per_rep_ci = cfg.bootstrap_B >= 2;
    for (int k = 0; k < 5; ++k) {
      StudyRow row;
      row.sample_size = n;
      row.model = StudyModel::Full;
      row.param_index = k;
      row.true_value = truth[k];

      std::vector<double> mle_vals, mom_vals;
      mle_vals.reserve(used.size());
      mom_vals.reserve(used.size());
      for (const auto* o : used) {
        mle_vals.push_back(o->mle[k]);
        mom_vals.push_back(o->mom[k]);
      }
      row.mle.mean = mean_of(mle_vals);
      row.mle.bias = row.mle.mean - truth[k];
      ParamAggregate mom_agg;
      mom_agg.mean = mean_of(mom_vals);
      mom_agg.bias = mom_agg.mean - truth[k];

      if (per_rep_ci) {
        // Bootstrap summaries averaged across replicates.
        std::vector<double> se_m, se_g, lo_m, hi_m, lo_g, hi_g;
        for (const auto* o : used) {
          se_m.push_back(o->mle_boot_se[k]);
          se_g.push_back(o->mom_boot_se[k]);
          lo_m.push_back(o->mle_ci[k].lower);
          hi_m.push_back(o->mle_ci[k].upper);
          lo_g.push_back(o->mom_ci[k].lower);
          hi_g.push_back(o->mom_ci[k].upper);
        }
        row.mle.se = mean_of(se_m);
        mom_agg.se = mean_of(se_g);
        row.mle.ci = {mean_of(lo_m), mean_of(hi_m), cfg.ci_level,
                      ConfidenceInterval::Method::BootstrapPercentile};
        mom_agg.ci = {mean_of(lo_g), mean_of(hi_g), cfg.ci_level,
                      ConfidenceInterval::Method::BootstrapPercentile};
      } else {
        // Spread of the estimates across study replicates.
        row.mle.se = sd_of(mle_vals, row.mle.mean);
        mom_agg.se = sd_of(mom_vals, mom_agg.mean);
        row.mle.ci = {row.mle.mean - z * row.mle.se, row.mle.mean + z * row.mle.se,
                      cfg.ci_level, ConfidenceInterval::Method::Wald};
        mom_agg.ci = {mom_agg.mean - z * mom_agg.se, mom_agg.mean + z * mom_agg.se,
                      cfg.ci_level, ConfidenceInterval::Method::Wald};
      }
      row.mom = mom_agg;
      report.rows.push_back(row);
    }

    if (cfg.submodel) {
      // Restricted rows cover the four free parameters; for EqualScales the
      // sigma0 row carries the common scale.
      std::vector<int> free_idx;
      switch (*cfg.submodel) {
        case SubModel::EqualScales:
        case SubModel::UnitConditionalScale:
          free_idx = {kMu, kSigma0, kAlpha, kBeta};
          break;
        case SubModel::UnitMarginalScale:
          free_idx = {kMu, kAlpha, kBeta, kSigma1};
          break;
      }
      for (int k : free_idx) {
        StudyRow row;
        row.sample_size = n;
        row.model = StudyModel::Restricted;
        row.param_index = k;
        row.true_value = truth[k];

        std::vector<double> vals;
        vals.reserve(used.size());
        for (const auto* o : used) vals.push_back(o->restricted[k]);
        row.mle.mean = mean_of(vals);
        row.mle.bias = row.mle.mean - truth[k];
        row.mle.se = sd_of(vals, row.mle.mean);
        row.mle.ci = {row.mle.mean - z * row.mle.se, row.mle.mean + z * row.mle.se,
                      cfg.ci_level, ConfidenceInterval::Method::Wald};
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

DensityGrid density_grid(const ModelParams& p, std::pair<double, double> x_range,
                         std::pair<double, double> y_range, int resolution) {
  p.validate();
  if (!std::isfinite(x_range.first) || !std::isfinite(x_range.second) ||
      !std::isfinite(y_range.first) || !std::isfinite(y_range.second) ||
      x_range.second <= x_range.first || y_range.second <= y_range.first) {
    throw DomainError("density_grid: ranges must be finite nonempty intervals");
  }
  if (resolution < 2) {
    throw DomainError("density_grid: resolution must be >= 2");
  }

  DensityGrid grid;
  grid.xs.resize(resolution);
  grid.ys.resize(resolution);
  const double dx = (x_range.second - x_range.first) / static_cast<double>(resolution - 1);
  const double dy = (y_range.second - y_range.first) / static_cast<double>(resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    grid.xs[i] = x_range.first + dx * static_cast<double>(i);
    grid.ys[i] = y_range.first + dy * static_cast<double>(i);
  }
  grid.values.resize(static_cast<std::size_t>(resolution) * resolution);
  for (int ix = 0; ix < resolution; ++ix) {
    for (int iy = 0; iy < resolution; ++iy) {
      grid.values[static_cast<std::size_t>(ix) * resolution + iy] =
          joint_pdf(p, grid.xs[ix], grid.ys[iy]);
    }
  }
  return grid;
}

}  // namespace pseudologit
