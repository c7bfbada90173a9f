#ifndef PSEUDOLOGIT_DETAIL_FIT_SPACE_HPP
#define PSEUDOLOGIT_DETAIL_FIT_SPACE_HPP

#include <optional>
#include <vector>

#include "pseudologit/estimation.hpp"

namespace pseudologit::detail {

/// Parameter space a likelihood fit runs over: the full five-parameter
/// space or one of the one-constraint sub-spaces.
enum class Space { Full, EqualScales, UnitSigma0, UnitSigma1 };

int space_dim(Space sp);

/// Optimization coordinates t: free locations/slopes as-is, free scales in
/// log space (positivity without constraints).
ModelParams space_decode(Space sp, const std::vector<double>& t);
std::vector<double> space_encode(Space sp, const ModelParams& p);

/// Free parameters in their original (untransformed) coordinates.
std::vector<double> space_free_original(Space sp, const ModelParams& p);
ModelParams space_decode_original(Space sp, const std::vector<double>& v);

/// Score restricted to the free directions, original coordinates. For
/// EqualScales the common-scale component is d/dsigma applied to both
/// factors, i.e. the sum of the two scale components of the full score.
std::vector<double> space_score_free(Space sp, const std::array<double, 5>& full_score);

/// Quasi-Newton maximization in t-coordinates followed by Newton polish;
/// returns a FitResult without std_errors (grad_norm is the max-norm of the
/// free-direction score).
FitResult fit_in_space(const PairedSample& s, Space sp, const ModelParams& init,
                       const SolverOptions& opts, FitMethod method);

/// Standard errors from the reduced observed information over the free
/// original coordinates, scattered into the 5-slot layout: EqualScales
/// mirrors the common-scale SE into both scale slots; a pinned scale gets
/// SE 0. Returns nullopt when the information is not positive definite.
std::optional<std::array<double, 5>> space_standard_errors(Space sp,
                                                           const ModelParams& p,
                                                           const PairedSample& s);

/// Shared precondition checks for every likelihood fit (n >= 6, positive
/// x-variance); throws DegenerateSampleError.
void check_fittable(const PairedSample& s);

}  // namespace pseudologit::detail

#endif
