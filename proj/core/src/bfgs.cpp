#include "pseudologit/detail/bfgs.hpp"

#include <cmath>
#include <ostream>
#include <utility>

namespace pseudologit::detail {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_rel_step(const std::vector<double>& step, const std::vector<double>& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < step.size(); ++i) {
    m = std::max(m, std::fabs(step[i]) / std::max(1.0, std::fabs(x[i])));
  }
  return m;
}

}  // namespace

BfgsResult bfgs_maximize(const ObjectiveFn& objective, std::vector<double> x0,
                         const BfgsOptions& opts) {
  const std::size_t n = x0.size();
  BfgsResult res;
  res.x = std::move(x0);

  std::vector<double> grad(n), grad_new(n), x_new(n), step(n), dx(n), dg(n);
  double f = objective(res.x, grad);

  // Inverse Hessian approximation, identity to start.
  std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) H[i][i] = 1.0;
  bool h_scaled = false;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    res.iterations = iter;
    if (opts.converged && opts.converged(res.x, grad)) {
      res.converged = true;
      break;
    }

    // Ascent direction step = H * grad.
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += H[i][j] * grad[j];
      step[i] = s;
    }
    double slope = dot(step, grad);
    if (!(slope > 0.0)) {
      // Direction is not an ascent direction; reset to steepest ascent.
      for (std::size_t i = 0; i < n; ++i) {
        step[i] = grad[i];
        for (std::size_t j = 0; j < n; ++j) H[i][j] = (i == j) ? 1.0 : 0.0;
      }
      slope = dot(grad, grad);
      h_scaled = false;
      if (!(slope > 0.0)) {
        break;  // zero gradient
      }
    }

    // Armijo backtracking on the ascent direction.
    double t = 1.0;
    double f_new = f;
    bool improved = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + t * step[i];
      f_new = objective(x_new, grad_new);
      if (std::isfinite(f_new) && f_new >= f + 1e-4 * t * slope) {
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) {
      break;
    }

    for (std::size_t i = 0; i < n; ++i) {
      dx[i] = x_new[i] - res.x[i];
      dg[i] = grad_new[i] - grad[i];
    }

    if (opts.trace) {
      *opts.trace << "iter " << iter << " f " << f_new << " step " << t << '\n';
    }

    const double rel_step = max_rel_step(dx, res.x);
    res.x = x_new;
    f = f_new;
    grad = grad_new;
    if (rel_step < opts.step_tol) {
      res.iterations = iter + 1;
      res.step_converged = true;
      if (opts.converged && opts.converged(res.x, grad)) {
        res.converged = true;
      }
      break;
    }

    // BFGS inverse update with curvature along -dg (maximization).
    const double sy = -dot(dx, dg);
    if (sy > 1e-14) {
      if (!h_scaled) {
        const double gg = dot(dg, dg);
        if (gg > 0.0) {
          const double scale = sy / gg;
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) H[i][j] = (i == j) ? scale : 0.0;
          }
        }
        h_scaled = true;
      }
      // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy with y = -dg.
      std::vector<double> Hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += H[i][j] * (-dg[j]);
        Hy[i] = s;
      }
      const double yHy = -dot(dg, Hy);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          H[i][j] += (sy + yHy) * dx[i] * dx[j] / (sy * sy) -
                     (Hy[i] * dx[j] + dx[i] * Hy[j]) / sy;
        }
      }
    }
  }

  if (!res.converged && opts.converged && opts.converged(res.x, grad)) {
    res.converged = true;
  }
  res.f = f;
  return res;
}

}  // namespace pseudologit::detail
