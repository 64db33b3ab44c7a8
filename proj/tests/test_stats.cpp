#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracle.hpp"
#include "qcb/stats.hpp"

using namespace qcb::stats;

TEST_CASE("incomplete beta closed forms") {
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.93, 1.0}) {
    CHECK(incomplete_beta(1, 1, x) == doctest::Approx(x).epsilon(1e-12));
    CHECK(incomplete_beta(2, 1, x) == doctest::Approx(x * x).epsilon(1e-12));
    CHECK(incomplete_beta(1, 3, x) == doctest::Approx(1 - std::pow(1 - x, 3)).epsilon(1e-12));
    CHECK(incomplete_beta(2.5, 4, x) + incomplete_beta(4, 2.5, 1 - x) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("t distribution critical values") {
  CHECK(student_t_quantile(0.975, 1) == doctest::Approx(12.706).epsilon(1e-4));
  CHECK(student_t_quantile(0.975, 4) == doctest::Approx(2.776).epsilon(1e-3));
  CHECK(student_t_quantile(0.975, 24) == doctest::Approx(2.064).epsilon(1e-3));
  CHECK(student_t_quantile(0.995, 10) == doctest::Approx(3.169).epsilon(1e-3));
  for (double df : {1.0, 3.0, 24.0})
    for (double p : {0.6, 0.9, 0.99}) CHECK(student_t_cdf(student_t_quantile(p, df), df) == doctest::Approx(p).epsilon(1e-10));
  CHECK(student_t_cdf(0, 7) == doctest::Approx(0.5));
}

TEST_CASE("p-values agree with numerical integration of the density") {
  for (double df : {1.0, 4.0, 9.0, 24.0})
    for (double t : {0.1, 0.8, 1.7, 3.2, 6.0})
      CHECK(std::abs(student_t_two_sided_p(t, df) - oracle::t_two_sided_p(t, df)) < 1e-8);
}

TEST_CASE("paired t-test textbook case") {
  const std::vector<double> a{1.5, 2.5, 2.0, 3.0, 2.0}, b{1, 1, 1, 1, 1};
  // diff = 0.5, 1.5, 1.0, 2.0, 1.0
  const double mean = 1.2;
  const double sd = std::sqrt((0.49 + 0.09 + 0.04 + 0.64 + 0.04) / 4);
  const auto r = paired_ttest(a, b);
  CHECK(r.t == doctest::Approx(mean / (sd / std::sqrt(5.0))).epsilon(1e-12));
  CHECK(r.cohens_d == doctest::Approx(mean / sd).epsilon(1e-12));
  CHECK(r.df == 4);
  CHECK(std::abs(r.p - oracle::t_two_sided_p(r.t, 4)) < 1e-6);
  CHECK(r.branch == TTestBranch::Regular);
  const auto s = paired_ttest(b, a);
  CHECK(s.t == doctest::Approx(-r.t));
  CHECK(s.p == doctest::Approx(r.p));
}

TEST_CASE("paired t-test degenerate branches") {
  const std::vector<double> a{0.8, 0.7, 0.9}, b{0.8, 0.7, 0.9};
  const auto eq = paired_ttest(a, b);
  CHECK(eq.branch == TTestBranch::Equal);
  CHECK(eq.p == 1.0);
  CHECK(eq.cohens_d == 0.0);
  const std::vector<double> c{2, 3, 4, 5}, d{1, 2, 3, 4};
  const auto zv = paired_ttest(c, d);
  CHECK(zv.branch == TTestBranch::ZeroVariance);
  CHECK(zv.t == std::numeric_limits<double>::infinity());
  CHECK(zv.p == 0.0);
  CHECK_THROWS(paired_ttest(std::vector<double>{1}, std::vector<double>{2}));
  CHECK_THROWS(paired_ttest(c, std::vector<double>{1, 2}));
}

TEST_CASE("confidence intervals") {
  const std::vector<double> two{0.8, 0.9};
  const auto ci = confidence_interval(two);
  CHECK(ci.mean == doctest::Approx(0.85));
  CHECK(ci.half_width == doctest::Approx(12.706 * std::sqrt(0.005) / std::sqrt(2.0)).epsilon(1e-3));
  const std::vector<double> flat{0.5, 0.5, 0.5};
  CHECK(confidence_interval(flat).half_width == 0.0);
  const std::vector<double> v{0.7, 0.75, 0.82, 0.77, 0.69};
  CHECK(confidence_interval(v, 0.90).half_width < confidence_interval(v, 0.95).half_width);
  CHECK(confidence_interval(v, 0.95).half_width < confidence_interval(v, 0.99).half_width);
  CHECK_THROWS(confidence_interval(std::vector<double>{1.0}));
}

TEST_CASE("stars") {
  CHECK(significance_stars(0.0005) == "***");
  CHECK(significance_stars(0.005) == "**");
  CHECK(significance_stars(0.03) == "*");
  CHECK(significance_stars(0.05) == "");
}

TEST_CASE("mean and sd") {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(v) == 5.0);
  CHECK(sample_sd(v) == doctest::Approx(std::sqrt(32.0 / 7.0)));
}
