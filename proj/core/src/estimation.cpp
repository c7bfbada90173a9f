#include "pseudologit/estimation.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "pseudologit/detail/fit_space.hpp"
#include "pseudologit/detail/linalg.hpp"

namespace pseudologit {

namespace {

constexpr double kPi = std::numbers::pi;

double inf_norm5(const std::array<double, 5>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// Marginal moment start used when the method of moments is unavailable:
// x and y fitted as independent logistics, no regression.
ModelParams moment_fallback(const PairedSample& s) {
  return {s.mean_x(), std::sqrt(3.0 * s.var_x()) / kPi, s.mean_y(), 0.0,
          std::sqrt(3.0 * s.var_y()) / kPi};
}

ModelParams default_init(const PairedSample& s) {
  try {
    return method_of_moments(s, MomVariant::Corrected).estimates;
  } catch (const Error&) {
    return moment_fallback(s);
  }
}

void attach_std_errors(FitResult& fr, const PairedSample& s, const SolverOptions& opts) {
  if (!opts.compute_std_errors || !fr.converged) {
    return;
  }
  fr.std_errors = detail::space_standard_errors(detail::Space::Full, fr.estimates, s);
}

}  // namespace

std::string_view fit_method_name(FitMethod m) {
  switch (m) {
    case FitMethod::MomPaper: return "mom-paper";
    case FitMethod::MomCorrected: return "mom-corrected";
    case FitMethod::MleQuasiNewton: return "mle-quasi-newton";
    case FitMethod::MlePaperHybrid: return "mle-paper-hybrid";
  }
  throw DomainError("fit_method_name: bad enum");
}

FitResult method_of_moments(const PairedSample& s, MomVariant variant) {
  if (s.var_x() == 0.0) {
    throw DegenerateSampleError("method of moments: zero variance in x");
  }
  const double m1 = s.mean_x();
  const double m2 = s.mean_y();
  const double s1_sq = s.var_x();
  const double s2_sq = s.var_y();
  const double s12 = s.cov_xy();

  const double beta = s12 / s1_sq;
  const double alpha = m2 - beta * m1;
  const double sigma0 = std::sqrt(3.0 * s1_sq) / kPi;
  const double radicand =
      variant == MomVariant::Paper ? 3.0 * (s2_sq - s12) : 3.0 * (s2_sq - beta * s12);
  if (!(radicand > 0.0)) {
    throw NonpositiveScaleError("method of moments: nonpositive radicand for sigma1");
  }
  const double sigma1 = std::sqrt(radicand) / kPi;

  FitResult fr;
  fr.estimates = {m1, sigma0, alpha, beta, sigma1};
  fr.loglik_at_estimate = loglik(fr.estimates, s);
  fr.method = variant == MomVariant::Paper ? FitMethod::MomPaper : FitMethod::MomCorrected;
  fr.converged = true;
  fr.iterations = 0;
  fr.grad_norm = inf_norm5(score(fr.estimates, s));
  return fr;
}

FitResult fit_mle(const PairedSample& s, std::optional<ModelParams> init,
                  const SolverOptions& opts) {
  detail::check_fittable(s);
  const ModelParams start = init ? *init : default_init(s);
  FitResult fr = detail::fit_in_space(s, detail::Space::Full, start, opts,
                                      FitMethod::MleQuasiNewton);
  attach_std_errors(fr, s, opts);
  return fr;
}

FitResult fit_mle_paper_hybrid(const PairedSample& s, const ModelParams& init,
                               const SolverOptions& opts) {
  detail::check_fittable(s);
  init.validate();

  const std::size_t n = s.size();
  const double nd = static_cast<double>(n);
  const double tol = opts.tol > 0.0 ? opts.tol : 1e-8 * nd;
  const auto& xs = s.xs();
  const auto& ys = s.ys();
  const double xbar = s.mean_x();
  const double ybar = s.mean_y();

  ModelParams p = init;
  double prev_ll = loglik(p, s);
  int decreases = 0;
  bool diverged = false;
  bool converged = false;
  int iter = 0;

  for (; iter < opts.max_iter; ++iter) {
    if (inf_norm5(score(p, s)) < tol) {
      converged = true;
      break;
    }

    // Newton step for mu with the simplified slope g' = -2 sum w.
    double g = 0.0, gp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = detail::logistic_survival((xs[i] - p.mu) / p.sigma0);
      g += w;
      gp += w;
    }
    g = nd - 2.0 * g;
    gp = -2.0 * gp;
    if (std::fabs(gp) < 1e-12) {
      diverged = true;
      break;
    }
    p.mu -= g / gp;

    // Fixed-point update of sigma0.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = xs[i] - p.mu;
      acc += d * detail::logistic_survival(d / p.sigma0);
    }
    p.sigma0 = xbar - p.mu - (2.0 / nd) * acc;

    if (!std::isfinite(p.mu) || !(p.sigma0 > 0.0) || !std::isfinite(p.sigma0)) {
      diverged = true;
      break;
    }

    // Same cycle for the conditional factor: Newton for alpha and beta,
    // fixed point for sigma1.
    double ga = 0.0, gpa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = detail::logistic_survival((ys[i] - p.alpha - p.beta * xs[i]) / p.sigma1);
      ga += w;
      gpa += w;
    }
    ga = nd - 2.0 * ga;
    gpa = -2.0 * gpa;
    if (std::fabs(gpa) < 1e-12) {
      diverged = true;
      break;
    }
    p.alpha -= ga / gpa;

    double gb = 0.0, gpb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = detail::logistic_survival((ys[i] - p.alpha - p.beta * xs[i]) / p.sigma1);
      gb += xs[i] * w;
      gpb += xs[i] * xs[i] * w;
    }
    gb = nd * xbar - 2.0 * gb;
    gpb = -2.0 * gpb;
    if (std::fabs(gpb) < 1e-12) {
      diverged = true;
      break;
    }
    p.beta -= gb / gpb;

    double accy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - p.alpha - p.beta * xs[i];
      accy += r * detail::logistic_survival(r / p.sigma1);
    }
    p.sigma1 = ybar - p.alpha - p.beta * xbar - (2.0 / nd) * accy;

    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !(p.sigma1 > 0.0) ||
        !std::isfinite(p.sigma1)) {
      diverged = true;
      break;
    }

    const double ll = loglik(p, s);
    decreases = ll < prev_ll ? decreases + 1 : 0;
    if (decreases >= 2) {
      diverged = true;
      break;
    }
    prev_ll = ll;
    if (opts.trace) {
      *opts.trace << "hybrid cycle " << iter << " loglik " << ll << '\n';
    }
  }

  if (!converged || diverged) {
    // Oscillation, divergence, or iteration exhaustion: hand over to the
    // robust solver rather than reporting a silent failure.
    return fit_mle(s, std::nullopt, opts);
  }

  FitResult fr;
  fr.estimates = p;
  fr.loglik_at_estimate = loglik(p, s);
  fr.method = FitMethod::MlePaperHybrid;
  fr.converged = true;
  fr.iterations = iter;
  fr.grad_norm = inf_norm5(score(p, s));
  attach_std_errors(fr, s, opts);
  return fr;
}

Matrix5 observed_information(const ModelParams& p, const PairedSample& s) {
  p.validate();
  const std::array<double, 5> theta = p.as_array();
  Matrix5 hess{};
  for (int j = 0; j < 5; ++j) {
    double h = 1e-5 * std::max(1.0, std::fabs(theta[j]));
    if ((j == kSigma0 || j == kSigma1) && theta[j] > 0.0) {
      h = std::min(h, 0.49 * theta[j]);
    }
    auto tp = theta;
    auto tm = theta;
    tp[j] += h;
    tm[j] -= h;
    const auto gp = score(ModelParams::from_array(tp), s);
    const auto gm = score(ModelParams::from_array(tm), s);
    for (int i = 0; i < 5; ++i) {
      hess[j][i] = (gp[i] - gm[i]) / (2.0 * h);
    }
  }
  Matrix5 info{};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      info[i][j] = -0.5 * (hess[i][j] + hess[j][i]);
    }
  }
  return info;
}

std::array<double, 5> standard_errors(const Matrix5& info) {
  std::vector<double> flat(25);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) flat[i * 5 + j] = info[i][j];
  }
  std::vector<double> inv;
  if (!detail::spd_inverse(flat, 5, inv)) {
    throw SingularInformationError("standard_errors: information matrix not positive definite");
  }
  std::array<double, 5> se{};
  for (int i = 0; i < 5; ++i) {
    const double d = inv[i * 5 + i];
    if (!(d > 0.0)) {
      throw SingularInformationError("standard_errors: nonpositive variance estimate");
    }
    se[i] = std::sqrt(d);
  }
  return se;
}

}  // namespace pseudologit
