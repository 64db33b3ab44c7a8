#pragma once

#include <span>
#include <string>

namespace qcb::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

/// Two-sided tail probability P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

/// Inverse CDF by bisection; accurate to ~1e-12 in t.
double student_t_quantile(double p, double df);

enum class TTestBranch { Regular, Equal, ZeroVariance };

std::string to_string(TTestBranch b);

struct PairedTTest {
  double t = 0.0;
  double p = 1.0;
  double cohens_d = 0.0;
  int df = 0;
  TTestBranch branch = TTestBranch::Regular;
};

/// Paired t-test on a - b with sample sd. All-zero differences report
/// equality (t = 0, p = 1, d = 0); constant nonzero differences report
/// t = d = +-inf and p = 0.
PairedTTest paired_ttest(std::span<const double> a, std::span<const double> b);

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;
  bool operator==(const ConfidenceInterval&) const = default;
};

/// mean +- t_{(1+level)/2, n-1} * sd / sqrt(n). Requires n >= 2.
ConfidenceInterval confidence_interval(std::span<const double> scores, double level = 0.95);

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1).
double sample_sd(std::span<const double> v);

/// "***" for p < 0.001, "**" for p < 0.01, "*" for p < 0.05, else "".
std::string significance_stars(double p);

}  // namespace qcb::stats
