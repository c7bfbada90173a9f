#ifndef PSEUDOLOGIT_DETAIL_BFGS_HPP
#define PSEUDOLOGIT_DETAIL_BFGS_HPP

#include <functional>
#include <iosfwd>
#include <vector>

namespace pseudologit::detail {

/// Objective callback: returns f(x) and fills grad (same length as x).
using ObjectiveFn =
    std::function<double(const std::vector<double>&, std::vector<double>&)>;

struct BfgsOptions {
  int max_iter = 500;
  /// Stop when the caller-defined convergence test passes; the test sees the
  /// current point and gradient. Keeps coordinate-specific criteria (e.g. a
  /// gradient test in untransformed parameters) out of the optimizer.
  std::function<bool(const std::vector<double>&, const std::vector<double>&)>
      converged;
  double step_tol = 1e-12;  // relative step size floor
  std::ostream* trace = nullptr;
};

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;    // caller's test passed
  bool step_converged = false;  // stopped on step size instead
};

/// Maximizes f via BFGS (rank-2 inverse-Hessian secant updates) with
/// Armijo backtracking. Deterministic; no randomization or restarts.
BfgsResult bfgs_maximize(const ObjectiveFn& objective, std::vector<double> x0,
                         const BfgsOptions& opts);

}  // namespace pseudologit::detail

#endif
