#ifndef PSEUDOLOGIT_SAMPLE_HPP
#define PSEUDOLOGIT_SAMPLE_HPP

#include <cstddef>
#include <vector>

#include "pseudologit/errors.hpp"

namespace pseudologit {

/// n paired observations plus cached summary moments.
///
/// All cached moments use the divide-by-n convention. A sample is degenerate
/// when either variance is exactly zero; correlation() is then NaN.
class PairedSample {
 public:
  /// Validates (equal lengths, n >= 1, all finite) and caches the moments.
  PairedSample(std::vector<double> xs, std::vector<double> ys);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  std::size_t size() const { return xs_.size(); }

  double mean_x() const { return mean_x_; }
  double mean_y() const { return mean_y_; }
  double var_x() const { return var_x_; }
  double var_y() const { return var_y_; }
  double cov_xy() const { return cov_xy_; }

  /// Pearson correlation; NaN when the sample is degenerate.
  double correlation() const { return r_xy_; }

  bool degenerate() const { return degenerate_; }

 private:
  std::vector<double> xs_, ys_;
  double mean_x_, mean_y_, var_x_, var_y_, cov_xy_, r_xy_;
  bool degenerate_;
};

PairedSample summarize(std::vector<double> xs, std::vector<double> ys);

/// Pearson correlation of the sample; throws DegenerateSampleError when
/// either variance is zero.
double pearson_correlation(const PairedSample& s);

}  // namespace pseudologit

#endif
