#ifndef PSEUDOLOGIT_ESTIMATION_HPP
#define PSEUDOLOGIT_ESTIMATION_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "pseudologit/model.hpp"
#include "pseudologit/sample.hpp"

namespace pseudologit {

enum class FitMethod { MomPaper, MomCorrected, MleQuasiNewton, MlePaperHybrid };

std::string_view fit_method_name(FitMethod m);

enum class MomVariant {
  /// sigma1 from sqrt(3*(S2^2 - S12))/pi.
  Paper,
  /// sigma1 from sqrt(3*(S2^2 - beta*S12))/pi, the plug-in of the closed-form
  /// Var(Y); this is the consistent estimator and the default.
  Corrected,
};

struct SolverOptions {
  /// Convergence tolerance on the max-norm of the score; 0 means 1e-8 * n.
  double tol = 0.0;
  int max_iter = 500;
  /// Fill FitResult::std_errors from the observed information on success.
  bool compute_std_errors = true;
  /// Optional per-iteration trace sink.
  std::ostream* trace = nullptr;
};

struct FitResult {
  ModelParams estimates;
  std::optional<std::array<double, 5>> std_errors;
  double loglik_at_estimate = 0.0;
  FitMethod method = FitMethod::MleQuasiNewton;
  bool converged = false;
  int iterations = 0;
  /// Max-norm of the score (free parameters only, original coordinates).
  double grad_norm = 0.0;
  /// Number of free parameters (5 for the full model, 4 for sub-models);
  /// the k in AIC/BIC.
  int free_parameters = 5;
};

/// Moment estimators: mu = M1, beta = S12/S1^2, alpha = M2 - beta*M1,
/// sigma0 = sqrt(3*S1^2)/pi, sigma1 per the variant.
FitResult method_of_moments(const PairedSample& s,
                            MomVariant variant = MomVariant::Corrected);

/// Maximizes the log-likelihood over (mu, log sigma0, alpha, beta,
/// log sigma1) by BFGS with backtracking, then Newton-polishes the optimum.
/// Default start is the corrected method of moments; if that fails, the
/// marginal moment fallback (M1, sqrt(3*S1^2)/pi, M2, 0, sqrt(3*S2^2)/pi).
FitResult fit_mle(const PairedSample& s,
                  std::optional<ModelParams> init = std::nullopt,
                  const SolverOptions& opts = {});

/// The alternating scheme: Newton steps for the locations (with the
/// simplified slope -2*sum w), fixed-point updates for the scales. Falls
/// back to fit_mle on divergence, oscillation, or iteration exhaustion.
FitResult fit_mle_paper_hybrid(const PairedSample& s, const ModelParams& init,
                               const SolverOptions& opts = {});

using Matrix5 = std::array<std::array<double, 5>, 5>;

/// Negative Hessian of loglik at p, via central differences of the score
/// with step 1e-5 * max(1, |theta_j|), symmetrized as (H + H^T)/2.
Matrix5 observed_information(const ModelParams& p, const PairedSample& s);

/// Square roots of the diagonal of the inverse; throws
/// SingularInformationError if the matrix is not positive definite.
std::array<double, 5> standard_errors(const Matrix5& info);

}  // namespace pseudologit

#endif
