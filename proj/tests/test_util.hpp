#ifndef PSEUDOLOGIT_TESTS_TEST_UTIL_HPP
#define PSEUDOLOGIT_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

// Independent numerical oracles for the test suite. Nothing here calls the
// library code paths under test.
namespace testutil {

// Nodes/weights of 20-point Gauss-Legendre on [-1,1], found by Newton
// iteration on the Legendre polynomial.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const GaussLegendre& order20() {
    static const GaussLegendre gl = make(20);
    return gl;
  }

  static GaussLegendre make(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      gl.nodes[i] = x;
      gl.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return gl;
  }
};

// Composite Gauss-Legendre integral of f over [a,b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64) {
  const auto& gl = GaussLegendre::order20();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      acc += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
    }
    total += acc * 0.5 * h;
  }
  return total;
}

// Kolmogorov-Smirnov distance of a sample to a cdf.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::fabs((i + 1.0) / n - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  return d;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Divide-by-n variance, matching the library's sample convention.
inline double variance_n(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

// Central finite difference of a scalar function of a vector argument.
inline double central_diff(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> x, std::size_t j, double h) {
  x[j] += h;
  const double fp = f(x);
  x[j] -= 2.0 * h;
  const double fm = f(x);
  return (fp - fm) / (2.0 * h);
}

// Fixed uniform source for deterministic sampling tests.
struct FixedUniform {
  std::vector<double> values;
  std::size_t next = 0;
  double uniform() { return values[next++ % values.size()]; }
};

}  // namespace testutil

#endif
