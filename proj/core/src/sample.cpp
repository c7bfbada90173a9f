#include "pseudologit/sample.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace pseudologit {

PairedSample::PairedSample(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) {
    throw DegenerateSampleError("paired sample: xs and ys differ in length");
  }
  const std::size_t n = xs_.size();
  if (n == 0) {
    throw DegenerateSampleError("paired sample: empty");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw DegenerateSampleError("paired sample: non-finite entry");
    }
  }

  // Two passes: means first, then centered second moments (divide by n).
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs_[i];
    sy += ys_[i];
  }
  mean_x_ = sx / static_cast<double>(n);
  mean_y_ = sy / static_cast<double>(n);

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs_[i] - mean_x_;
    const double dy = ys_[i] - mean_y_;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  var_x_ = sxx / static_cast<double>(n);
  var_y_ = syy / static_cast<double>(n);
  cov_xy_ = sxy / static_cast<double>(n);

  degenerate_ = (var_x_ == 0.0 || var_y_ == 0.0);
  r_xy_ = degenerate_ ? std::numeric_limits<double>::quiet_NaN()
                      : cov_xy_ / std::sqrt(var_x_ * var_y_);
}

PairedSample summarize(std::vector<double> xs, std::vector<double> ys) {
  return PairedSample(std::move(xs), std::move(ys));
}

double pearson_correlation(const PairedSample& s) {
  if (s.degenerate()) {
    throw DegenerateSampleError("pearson correlation: zero variance");
  }
  return s.correlation();
}

}  // namespace pseudologit
