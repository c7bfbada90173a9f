#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pseudologit/model.hpp"
#include "pseudologit/random.hpp"
#include "pseudologit/simulation.hpp"
#include "test_util.hpp"

using namespace pseudologit;

namespace {
const ModelParams kPaperParams{2.0, 3.0, 1.0, 3.0, 2.0};

ModelParams random_params(RandomStream& rng) {
  return {4.0 * (rng.uniform() - 0.5), 0.3 + 3.0 * rng.uniform(),
          4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5),
          0.3 + 3.0 * rng.uniform()};
}
}  // namespace

TEST_CASE("conditional location is affine") {
  CHECK(conditional_location({0, 1, 1.0, 3.0, 1}, 2.0) == doctest::Approx(7.0));
  CHECK(conditional_location({0, 1, 5.0, 0.0, 1}, 123.0) == doctest::Approx(5.0));
  CHECK(conditional_location({0, 1, 4.775, 0.387, 1}, 52.517) ==
        doctest::Approx(25.099).epsilon(1e-4));
}

TEST_CASE("joint pdf values") {
  CHECK(joint_pdf(kPaperParams, 2.0, 7.0) == doctest::Approx(1.0 / 96.0).epsilon(1e-13));
  // Independence case: product of the two univariate oracle values.
  CHECK(joint_pdf({0, 1, 0, 0, 1}, 1.0, 1.0) ==
        doctest::Approx(0.038656252292952917).epsilon(1e-13));
  CHECK_THROWS_AS(joint_pdf(kPaperParams, std::nan(""), 0.0), DomainError);
  CHECK(std::exp(joint_log_pdf(kPaperParams, 2.0, 7.0)) ==
        doctest::Approx(joint_pdf(kPaperParams, 2.0, 7.0)).epsilon(1e-12));
}

TEST_CASE("joint pdf integrates to one") {
  // Iterated quadrature with an x-dependent y window that tracks the
  // conditional location.
  for (const ModelParams p : {kPaperParams, ModelParams{0, 1, 0, 0, 1},
                              ModelParams{-1, 0.5, 2, -2, 1.5}}) {
    const double total = testutil::integrate(
        [&](double x) {
          const double c = p.alpha + p.beta * x;
          return testutil::integrate([&](double y) { return joint_pdf(p, x, y); },
                                     c - 40.0 * p.sigma1, c + 40.0 * p.sigma1, 60);
        },
        p.mu - 40.0 * p.sigma0, p.mu + 40.0 * p.sigma0, 60);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("marginal consistency: integrating y out recovers the x marginal") {
  const ModelParams p{1.0, 2.0, 0.5, 1.5, 0.8};
  RandomStream rng(5);
  for (int i = 0; i < 20; ++i) {
    const double x = p.mu + 12.0 * (rng.uniform() - 0.5);
    const double c = p.alpha + p.beta * x;
    const double marginal = testutil::integrate(
        [&](double y) { return joint_pdf(p, x, y); }, c - 45.0 * p.sigma1,
        c + 45.0 * p.sigma1, 80);
    CHECK(marginal == doctest::Approx(pdf(x, p.marginal_x())).epsilon(1e-8));
  }
}

TEST_CASE("gumbel bivariate logistic cdf") {
  CHECK(gumbel_cdf(0.0, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(gumbel_cdf(std::numeric_limits<double>::infinity(), 0.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gumbel_cdf(1.0, -1.0) == doctest::Approx(0.24472847105479765).epsilon(1e-13));
  // Monotone in each argument.
  CHECK(gumbel_cdf(1.0, 0.0) > gumbel_cdf(0.0, 0.0));
  CHECK(gumbel_cdf(0.0, 1.0) > gumbel_cdf(0.0, 0.0));
}

TEST_CASE("closed-form moments") {
  constexpr double pi2_3 = std::numbers::pi * std::numbers::pi / 3.0;

  SUBCASE("values at the simulation parameters") {
    const MomentSummary m = moments(kPaperParams);
    CHECK(m.mean_x == doctest::Approx(2.0));
    CHECK(m.mean_y == doctest::Approx(7.0));
    CHECK(m.var_x == doctest::Approx(9.0 * pi2_3).epsilon(1e-14));
    CHECK(m.var_y == doctest::Approx(85.0 * pi2_3).epsilon(1e-14));
    CHECK(m.cov_xy == doctest::Approx(27.0 * pi2_3).epsilon(1e-14));
    CHECK(m.rho == doctest::Approx(0.97618706018395277).epsilon(1e-14));
  }

  SUBCASE("beta = 0 gives independence") {
    const MomentSummary m = moments({2, 3, 1, 0, 2});
    CHECK(m.cov_xy == 0.0);
    CHECK(m.rho == 0.0);
  }

  SUBCASE("equal scales with beta = 1 gives 1/sqrt(2)") {
    CHECK(correlation({0, 2, 0, 1, 2}) ==
          doctest::Approx(0.70710678118654752).epsilon(1e-14));
  }

  SUBCASE("special-case formulas agree with the general one") {
    RandomStream rng(31);
    for (int i = 0; i < 50; ++i) {
      const double beta = 6.0 * (rng.uniform() - 0.5);
      const double s = 0.2 + 3.0 * rng.uniform();
      // sigma0 == sigma1.
      CHECK(correlation({0, s, 0, beta, s}) ==
            doctest::Approx(beta / std::sqrt(1.0 + beta * beta)).epsilon(1e-15));
      // sigma0 == 1.
      CHECK(correlation({0, 1, 0, beta, s}) ==
            doctest::Approx(beta / std::sqrt(s * s + beta * beta)).epsilon(1e-15));
      // sigma1 == 1.
      CHECK(correlation({0, s, 0, beta, 1}) ==
            doctest::Approx(beta * s / std::sqrt(1.0 + beta * beta * s * s)).epsilon(1e-15));
    }
  }

  SUBCASE("correlation strictly increases in nonnegative beta") {
    double prev = -1.0;
    for (double beta = 0.0; beta <= 5.0; beta += 0.25) {
      const double r = correlation({0, 1.7, 0, beta, 0.9});
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("law of total variance holds in Monte Carlo") {
  const ModelParams p = kPaperParams;
  RandomStream rng(404);
  const int n = 1000000;
  std::vector<double> ys(n);
  for (auto& y : ys) {
    const auto [xv, yv] = sample_pair(p, rng);
    y = yv;
  }
  const double v = testutil::variance_n(ys);
  const double m = testutil::mean(ys);
  double m4 = 0.0;
  for (double y : ys) {
    const double c = y - m;
    m4 += c * c * c * c;
  }
  m4 /= n;
  const double true_var =
      std::numbers::pi * std::numbers::pi / 3.0 *
      (p.sigma1 * p.sigma1 + p.beta * p.beta * p.sigma0 * p.sigma0);
  const double mcse = std::sqrt((m4 - v * v) / n);
  CHECK(std::fabs(v - true_var) < 5.0 * mcse);
}

TEST_CASE("loglik: values, permutation symmetry, brute-force sum") {
  SUBCASE("single pair at both location points") {
    const PairedSample s = summarize({2.0}, {7.0});
    CHECK(loglik(kPaperParams, s) == doctest::Approx(std::log(1.0 / 96.0)).epsilon(1e-13));
  }

  SUBCASE("loglik equals the per-pair sum and matches the expanded form") {
    RandomStream rng(7);
    for (int rep = 0; rep < 10; ++rep) {
      const ModelParams p = random_params(rng);
      RandomStream data = rng.split(rep);
      const PairedSample s = sample_dataset(kPaperParams, 20, data);

      double brute = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        brute += joint_log_pdf(p, s.xs()[i], s.ys()[i]);
      }
      CHECK(loglik(p, s) == doctest::Approx(brute).epsilon(1e-12));

      // Expanded form of the log-likelihood: linear terms in the means plus
      // the two log1p sums and the scale terms.
      const double n = static_cast<double>(s.size());
      double sum0 = 0.0, sum1 = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        sum0 += std::log1p(std::exp(-(s.xs()[i] - p.mu) / p.sigma0));
        sum1 += std::log1p(std::exp(-(s.ys()[i] - p.alpha - p.beta * s.xs()[i]) / p.sigma1));
      }
      const double expanded =
          n * p.mu / p.sigma0 - n * s.mean_x() / p.sigma0 - 2.0 * sum0 -
          n * std::log(p.sigma0) + n * p.alpha / p.sigma1 +
          n * p.beta * s.mean_x() / p.sigma1 - n * s.mean_y() / p.sigma1 - 2.0 * sum1 -
          n * std::log(p.sigma1);
      CHECK(loglik(p, s) == doctest::Approx(expanded).epsilon(1e-9));
    }
  }

  SUBCASE("permutation invariance") {
    RandomStream rng(12);
    const PairedSample s = sample_dataset(kPaperParams, 50, rng);
    std::vector<double> xs(s.xs().rbegin(), s.xs().rend());
    std::vector<double> ys(s.ys().rbegin(), s.ys().rend());
    const PairedSample r = summarize(xs, ys);
    CHECK(loglik(kPaperParams, s) == doctest::Approx(loglik(kPaperParams, r)).epsilon(1e-12));
  }
}

TEST_CASE("score matches finite differences of loglik") {
  RandomStream rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    RandomStream node = rng.split(rep);
    const ModelParams truth = random_params(node);
    RandomStream data = node.split(0);
    const PairedSample s = sample_dataset(truth, 20, data);
    RandomStream at = node.split(1);
    const ModelParams p = random_params(at);

    const auto sc = score(p, s);
    const auto f = [&](const std::vector<double>& v) {
      return loglik({v[0], v[1], v[2], v[3], v[4]}, s);
    };
    const auto arr = p.as_array();
    const std::vector<double> theta(arr.begin(), arr.end());
    for (std::size_t j = 0; j < 5; ++j) {
      const double h = 1e-6 * std::max(1.0, std::fabs(theta[j]));
      const double fd = testutil::central_diff(f, theta, j, h);
      CHECK(sc[j] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("score vanishes for symmetric two-point samples") {
  const ModelParams p{1.0, 2.0, 0.5, 1.5, 0.8};
  const double c = 3.7;
  const double x1 = p.mu - c, x2 = p.mu + c;
  const PairedSample s = summarize({x1, x2}, {p.alpha + p.beta * x1, p.alpha + p.beta * x2});
  const auto sc = score(p, s);
  CHECK(sc[kMu] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sc[kAlpha] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("loglik rejects empty input") {
  CHECK_THROWS_AS(summarize({}, {}), DegenerateSampleError);
}
