#include "pseudologit/detail/fit_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pseudologit/detail/bfgs.hpp"
#include "pseudologit/detail/linalg.hpp"

namespace pseudologit::detail {

namespace {

constexpr double kLogScaleLimit = 300.0;  // |log sigma| beyond this is hopeless

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

bool finite_params(const ModelParams& p) {
  return std::isfinite(p.mu) && std::isfinite(p.sigma0) && std::isfinite(p.alpha) &&
         std::isfinite(p.beta) && std::isfinite(p.sigma1) && p.sigma0 > 0.0 &&
         p.sigma1 > 0.0;
}

}  // namespace

int space_dim(Space sp) { return sp == Space::Full ? 5 : 4; }

ModelParams space_decode(Space sp, const std::vector<double>& t) {
  switch (sp) {
    case Space::Full:
      return {t[0], std::exp(t[1]), t[2], t[3], std::exp(t[4])};
    case Space::EqualScales: {
      const double s = std::exp(t[3]);
      return {t[0], s, t[1], t[2], s};
    }
    case Space::UnitSigma0:
      return {t[0], 1.0, t[1], t[2], std::exp(t[3])};
    case Space::UnitSigma1:
      return {t[0], std::exp(t[1]), t[2], t[3], 1.0};
  }
  throw Error("unreachable");
}

std::vector<double> space_encode(Space sp, const ModelParams& p) {
  switch (sp) {
    case Space::Full:
      return {p.mu, std::log(p.sigma0), p.alpha, p.beta, std::log(p.sigma1)};
    case Space::EqualScales:
      return {p.mu, p.alpha, p.beta, std::log(p.sigma0)};
    case Space::UnitSigma0:
      return {p.mu, p.alpha, p.beta, std::log(p.sigma1)};
    case Space::UnitSigma1:
      return {p.mu, std::log(p.sigma0), p.alpha, p.beta};
  }
  throw Error("unreachable");
}

std::vector<double> space_free_original(Space sp, const ModelParams& p) {
  switch (sp) {
    case Space::Full:
      return {p.mu, p.sigma0, p.alpha, p.beta, p.sigma1};
    case Space::EqualScales:
      return {p.mu, p.alpha, p.beta, p.sigma0};
    case Space::UnitSigma0:
      return {p.mu, p.alpha, p.beta, p.sigma1};
    case Space::UnitSigma1:
      return {p.mu, p.sigma0, p.alpha, p.beta};
  }
  throw Error("unreachable");
}

ModelParams space_decode_original(Space sp, const std::vector<double>& v) {
  switch (sp) {
    case Space::Full:
      return {v[0], v[1], v[2], v[3], v[4]};
    case Space::EqualScales:
      return {v[0], v[3], v[1], v[2], v[3]};
    case Space::UnitSigma0:
      return {v[0], 1.0, v[1], v[2], v[3]};
    case Space::UnitSigma1:
      return {v[0], v[1], v[2], v[3], 1.0};
  }
  throw Error("unreachable");
}

std::vector<double> space_score_free(Space sp, const std::array<double, 5>& sc) {
  switch (sp) {
    case Space::Full:
      return {sc[0], sc[1], sc[2], sc[3], sc[4]};
    case Space::EqualScales:
      return {sc[0], sc[2], sc[3], sc[1] + sc[4]};
    case Space::UnitSigma0:
      return {sc[0], sc[2], sc[3], sc[4]};
    case Space::UnitSigma1:
      return {sc[0], sc[1], sc[2], sc[3]};
  }
  throw Error("unreachable");
}

namespace {

// Gradient of loglik with respect to the t-coordinates; log-scale entries
// pick up a factor of sigma.
std::vector<double> grad_t(Space sp, const ModelParams& p,
                           const std::array<double, 5>& sc) {
  switch (sp) {
    case Space::Full:
      return {sc[0], p.sigma0 * sc[1], sc[2], sc[3], p.sigma1 * sc[4]};
    case Space::EqualScales:
      return {sc[0], sc[2], sc[3], p.sigma0 * (sc[1] + sc[4])};
    case Space::UnitSigma0:
      return {sc[0], sc[2], sc[3], p.sigma1 * sc[4]};
    case Space::UnitSigma1:
      return {sc[0], p.sigma0 * sc[1], sc[2], sc[3]};
  }
  throw Error("unreachable");
}

bool t_in_range(Space sp, const std::vector<double>& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i])) return false;
  }
  // The log-scale coordinates sit at fixed slots per space.
  switch (sp) {
    case Space::Full:
      return std::fabs(t[1]) < kLogScaleLimit && std::fabs(t[4]) < kLogScaleLimit;
    case Space::EqualScales:
    case Space::UnitSigma0:
      return std::fabs(t[3]) < kLogScaleLimit;
    case Space::UnitSigma1:
      return std::fabs(t[1]) < kLogScaleLimit;
  }
  return false;
}

// Newton refinement in t-coordinates with a finite-difference Hessian of
// the t-gradient. Squeezes the score to near machine precision so the
// optimum is reproducible to ~1e-12 regardless of data ordering.
struct PolishOutcome {
  int iterations = 0;
};

PolishOutcome newton_polish(const PairedSample& s, Space sp, std::vector<double>& t,
                            double& ll, int max_polish) {
  const int k = space_dim(sp);
  PolishOutcome out;

  auto eval_grad = [&](const std::vector<double>& tv) {
    const ModelParams p = space_decode(sp, tv);
    return grad_t(sp, p, score(p, s));
  };
  auto score_norm = [&](const std::vector<double>& tv) {
    const ModelParams p = space_decode(sp, tv);
    return inf_norm(space_score_free(sp, score(p, s)));
  };

  double best_norm = score_norm(t);
  std::vector<double> tp(k), tm(k), hess(k * k), step(k), t_new(k);

  for (int it = 0; it < max_polish; ++it) {
    if (best_norm < 1e-13 * static_cast<double>(s.size())) break;
    const std::vector<double> g = eval_grad(t);

    // Central-difference Hessian of the t-gradient, symmetrized; the
    // negative is SPD near the maximum.
    for (int j = 0; j < k; ++j) {
      const double h = 1e-6 * std::max(1.0, std::fabs(t[j]));
      tp = t;
      tm = t;
      tp[j] += h;
      tm[j] -= h;
      const std::vector<double> gp = eval_grad(tp);
      const std::vector<double> gm = eval_grad(tm);
      for (int i = 0; i < k; ++i) {
        hess[j * k + i] = (gp[i] - gm[i]) / (2.0 * h);
      }
    }
    std::vector<double> neg(k * k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        neg[i * k + j] = -0.5 * (hess[i * k + j] + hess[j * k + i]);
      }
    }
    if (!cholesky(neg, k)) break;
    step.assign(g.begin(), g.end());
    cholesky_solve(neg, k, step);

    // Damped acceptance: keep the Newton step only if it reduces the
    // score norm.
    bool accepted = false;
    double scale = 1.0;
    for (int bt = 0; bt < 8; ++bt) {
      for (int i = 0; i < k; ++i) t_new[i] = t[i] + scale * step[i];
      if (t_in_range(sp, t_new)) {
        const double norm_new = score_norm(t_new);
        if (norm_new < best_norm) {
          t = t_new;
          best_norm = norm_new;
          accepted = true;
          break;
        }
      }
      scale *= 0.5;
    }
    ++out.iterations;
    if (!accepted) break;
  }

  ll = loglik(space_decode(sp, t), s);
  return out;
}

}  // namespace

void check_fittable(const PairedSample& s) {
  if (s.size() < 6) {
    throw DegenerateSampleError("fit: need at least 6 observations");
  }
  if (s.var_x() == 0.0) {
    throw DegenerateSampleError("fit: zero variance in x");
  }
}

FitResult fit_in_space(const PairedSample& s, Space sp, const ModelParams& init,
                       const SolverOptions& opts, FitMethod method) {
  check_fittable(s);
  init.validate();

  const double n = static_cast<double>(s.size());
  const double tol = opts.tol > 0.0 ? opts.tol : 1e-8 * n;

  const auto objective = [&](const std::vector<double>& t, std::vector<double>& grad) {
    if (!t_in_range(sp, t)) {
      std::fill(grad.begin(), grad.end(), 0.0);
      return -std::numeric_limits<double>::infinity();
    }
    const ModelParams p = space_decode(sp, t);
    const auto sc = score(p, s);
    grad = grad_t(sp, p, sc);
    return loglik(p, s);
  };

  const auto converged_test = [&](const std::vector<double>& t,
                                  const std::vector<double>&) {
    const ModelParams p = space_decode(sp, t);
    return inf_norm(space_score_free(sp, score(p, s))) < tol;
  };

  BfgsOptions bopts;
  bopts.max_iter = opts.max_iter;
  bopts.converged = converged_test;
  bopts.trace = opts.trace;

  BfgsResult br = bfgs_maximize(objective, space_encode(sp, init), bopts);
  double ll = br.f;
  const PolishOutcome polish = newton_polish(s, sp, br.x, ll, 8);

  FitResult fr;
  fr.estimates = space_decode(sp, br.x);
  fr.loglik_at_estimate = ll;
  fr.method = method;
  fr.iterations = br.iterations + polish.iterations;
  fr.grad_norm = inf_norm(space_score_free(sp, score(fr.estimates, s)));
  fr.converged = fr.grad_norm < tol || br.step_converged;
  fr.free_parameters = space_dim(sp);
  return fr;
}

std::optional<std::array<double, 5>> space_standard_errors(Space sp,
                                                           const ModelParams& p,
                                                           const PairedSample& s) {
  const int k = space_dim(sp);
  const std::vector<double> v0 = space_free_original(sp, p);

  // Reduced observed information: central differences of the free-direction
  // score over the free original coordinates.
  std::vector<double> info(k * k);
  std::vector<double> vp(v0), vm(v0);
  for (int j = 0; j < k; ++j) {
    double h = 1e-5 * std::max(1.0, std::fabs(v0[j]));
    if (v0[j] > 0.0) h = std::min(h, 0.49 * v0[j]);  // keep scales positive
    vp = v0;
    vm = v0;
    vp[j] += h;
    vm[j] -= h;
    const auto gp = space_score_free(sp, score(space_decode_original(sp, vp), s));
    const auto gm = space_score_free(sp, score(space_decode_original(sp, vm), s));
    for (int i = 0; i < k; ++i) {
      info[j * k + i] = -(gp[i] - gm[i]) / (2.0 * h);
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double m = 0.5 * (info[i * k + j] + info[j * k + i]);
      info[i * k + j] = m;
      info[j * k + i] = m;
    }
  }

  std::vector<double> inv;
  if (!spd_inverse(info, k, inv)) {
    return std::nullopt;
  }
  std::vector<double> se(k);
  for (int i = 0; i < k; ++i) {
    const double d = inv[i * k + i];
    if (!(d > 0.0)) return std::nullopt;
    se[i] = std::sqrt(d);
  }

  std::array<double, 5> out{};
  switch (sp) {
    case Space::Full:
      out = {se[0], se[1], se[2], se[3], se[4]};
      break;
    case Space::EqualScales:
      out = {se[0], se[3], se[1], se[2], se[3]};
      break;
    case Space::UnitSigma0:
      out = {se[0], 0.0, se[1], se[2], se[3]};
      break;
    case Space::UnitSigma1:
      out = {se[0], se[1], se[2], se[3], 0.0};
      break;
  }
  return out;
}

}  // namespace pseudologit::detail
