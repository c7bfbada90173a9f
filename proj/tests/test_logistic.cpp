#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pseudologit/logistic.hpp"
#include "pseudologit/random.hpp"
#include "test_util.hpp"

using namespace pseudologit;

TEST_CASE("pdf values") {
  CHECK(pdf(0.0, {0.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(pdf(2.0, {2.0, 3.0}) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  // e^-1 / (1+e^-1)^2, frozen from a high-precision evaluation.
  CHECK(pdf(1.0, {0.0, 1.0}) == doctest::Approx(0.19661193324148185).epsilon(1e-14));
}

TEST_CASE("pdf is numerically stable far in the tails") {
  const LogisticParams p{0.0, 1.0};
  CHECK(std::isfinite(pdf(700.0, p)));
  CHECK(std::isfinite(pdf(-700.0, p)));
  CHECK(pdf(700.0, p) >= 0.0);
  CHECK_THROWS_AS(pdf(std::nan(""), p), DomainError);
  CHECK_THROWS_AS(pdf(0.0, LogisticParams{0.0, -1.0}), DomainError);
}

TEST_CASE("log_pdf values and tail linearity") {
  CHECK(log_pdf(0.0, {0.0, 1.0}) == doctest::Approx(std::log(0.25)).epsilon(1e-14));
  CHECK(log_pdf(1.0, {0.0, 1.0}) == doctest::Approx(-1.6265233750364457).epsilon(1e-14));
  const double far = log_pdf(1000.0, {0.0, 1.0});
  CHECK(std::isfinite(far));
  CHECK(far == doctest::Approx(-1000.0).epsilon(1e-10));
}

TEST_CASE("exp(log_pdf) equals pdf") {
  const LogisticParams p{1.5, 0.7};
  for (double x : {-30.0, -3.0, 0.0, 1.5, 2.0, 40.0}) {
    CHECK(std::exp(log_pdf(x, p)) == doctest::Approx(pdf(x, p)).epsilon(1e-12));
  }
}

TEST_CASE("cdf values and infinities") {
  const LogisticParams p{3.0, 2.0};
  CHECK(cdf(3.0, p) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf(3.0 + 2.0 * std::log(3.0), p) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cdf(-2.0, {0.0, 1.0}) == doctest::Approx(0.11920292202211756).epsilon(1e-14));
  CHECK(cdf(std::numeric_limits<double>::infinity(), p) == 1.0);
  CHECK(cdf(-std::numeric_limits<double>::infinity(), p) == 0.0);
  CHECK_THROWS_AS(cdf(std::nan(""), p), DomainError);
}

TEST_CASE("quantile values and domain") {
  const LogisticParams p{2.0, 3.0};
  CHECK(quantile(0.5, p) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(quantile(0.75, {0.0, 1.0}) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(quantile(0.9, p) == doctest::Approx(8.5916737320086581).epsilon(1e-14));
  CHECK_THROWS_AS(quantile(0.0, p), DomainError);
  CHECK_THROWS_AS(quantile(1.0, p), DomainError);
  CHECK_THROWS_AS(quantile(-0.1, p), DomainError);
}

TEST_CASE("pdf integrates to one") {
  for (const LogisticParams p : {LogisticParams{0.0, 1.0}, LogisticParams{2.0, 3.0},
                                 LogisticParams{-5.0, 0.2}}) {
    const double total = testutil::integrate([&](double x) { return pdf(x, p); },
                                             p.location - 40.0 * p.scale,
                                             p.location + 40.0 * p.scale, 120);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("pdf symmetry about the location is exact") {
  const LogisticParams p{1.25, 0.8};
  RandomStream rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = p.location + 20.0 * (rng.uniform() - 0.5);
    CHECK(pdf(x, p) == pdf(2.0 * p.location - x, p));
  }
}

TEST_CASE("quantile inverts cdf") {
  const LogisticParams p{-1.0, 2.5};
  RandomStream rng(17);
  for (int i = 0; i < 200; ++i) {
    const double x = p.location + 60.0 * p.scale * (rng.uniform() - 0.5);
    const double u = cdf(x, p);
    if (u > 0.0 && u < 1.0) {
      CHECK(quantile(u, p) == doctest::Approx(x).epsilon(1e-9));
    }
  }
}

TEST_CASE("cdf derivative matches pdf") {
  const LogisticParams p{0.5, 1.3};
  RandomStream rng(23);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const double x = p.location + 10.0 * (rng.uniform() - 0.5);
    const double fd = (cdf(x + h, p) - cdf(x - h, p)) / (2.0 * h);
    CHECK(fd == doctest::Approx(pdf(x, p)).epsilon(1e-6));
  }
}

TEST_CASE("sampling: fixed stream, median, KS, moments") {
  const LogisticParams p{2.0, 3.0};

  SUBCASE("stream yielding one half returns the location") {
    testutil::FixedUniform fixed{{0.5}};
    CHECK(sample(p, fixed) == doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("empirical median and KS distance over 10k draws") {
    RandomStream rng(101);
    const LogisticParams std01{0.0, 1.0};
    std::vector<double> draws(10000);
    for (auto& d : draws) d = sample(std01, rng);
    std::vector<double> sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[4999] + sorted[5000]);
    CHECK(std::fabs(median) < 0.05);
    CHECK(testutil::ks_distance(draws, [&](double x) { return cdf(x, std01); }) < 0.02);
  }

  SUBCASE("mean and variance over 1e6 draws within 5 MC standard errors") {
    RandomStream rng(202);
    const int n = 1000000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample(p, rng);
    const double m = testutil::mean(draws);
    const double v = testutil::variance_n(draws);
    const double true_var = p.scale * p.scale * std::numbers::pi * std::numbers::pi / 3.0;
    const double mcse_mean = std::sqrt(true_var / n);
    double m4 = 0.0;
    for (double d : draws) {
      const double c = d - m;
      m4 += c * c * c * c;
    }
    m4 /= n;
    const double mcse_var = std::sqrt((m4 - v * v) / n);
    CHECK(std::fabs(m - p.location) < 5.0 * mcse_mean);
    CHECK(std::fabs(v - true_var) < 5.0 * mcse_var);
  }
}
